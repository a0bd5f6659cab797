// Copyright 2026 The infsamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infsamp/cascade.hpp"
#include "infsamp/graph.hpp"
#include "infsamp/rng.hpp"

namespace infsamp {

// Seed-set distribution including each node independently. Every marginal
// lies in [b, 1 - b] with b = min(n^-3, 1/2).
class ProductDistribution {
 public:
  ProductDistribution() = default;
  // Throws ValidationError when a marginal is outside the bounded range.
  explicit ProductDistribution(std::vector<double> marginals);

  // Clamps each marginal into the bounded range instead of rejecting.
  static ProductDistribution clamped(std::vector<double> marginals);
  static double bound(std::size_t n);

  std::size_t size() const { return marginals_.size(); }
  std::span<const double> marginals() const { return marginals_; }
  double marginal(NodeId v) const { return marginals_[v]; }

  // Sorted node ids of one draw.
  std::vector<NodeId> draw(Rng& rng) const;

 private:
  std::vector<double> marginals_;
};

// All marginals k/n (clamped), so sets have expected size k.
ProductDistribution uniform_expected_k(std::size_t n, std::size_t k);

// One observation: a seed set and the number of nodes it influenced in a
// single cascade realization.
struct Sample {
  std::vector<NodeId> seeds;  // sorted, distinct
  double value = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSet {
  SampleMode mode = SampleMode::kRedrawnGraph;
  std::size_t num_nodes = 0;
  std::uint64_t rng_seed = 0;
  // Seed of the structural graph in fixed mode, when known.
  std::optional<std::uint64_t> graph_seed;
  std::vector<double> marginals;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

// Draws m samples. Sample i uses the stream (seed, i): its seed set from the
// distribution, then one fresh cascade (and, for a layout, a fresh graph).
SampleSet draw_samples(const DiffusionModel& model,
                       const ProductDistribution& dist, std::size_t m,
                       std::uint64_t seed);

inline SampleSet draw_samples(const WeightedGraph& graph,
                              const ProductDistribution& dist, std::size_t m,
                              std::uint64_t seed) {
  return draw_samples(DiffusionModel::fixed(graph), dist, m, seed);
}

inline SampleSet draw_samples(const CommunityLayout& layout,
                              const ProductDistribution& dist, std::size_t m,
                              std::uint64_t seed) {
  return draw_samples(DiffusionModel::redrawn(layout), dist, m, seed);
}

// Fraction of samples whose seed set misses every node of `community`.
double empirical_nonubiquity(const SampleSet& samples,
                             std::span<const NodeId> community);

// FNV-1a digest of the marginals' shortest decimal forms, "fnv1a64:<hex>".
std::string marginals_digest(std::span<const double> marginals);

// CSV "sample_id,value,seeds" (seeds ';'-separated) plus a JSON-lines
// sidecar at sidecar_path(csv) holding mode, seeds, sizes and marginals.
void save_samples(const SampleSet& samples, const std::filesystem::path& csv);
SampleSet load_samples(const std::filesystem::path& csv);
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

}  // namespace infsamp
