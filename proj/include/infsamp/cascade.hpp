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

// Independent-cascade diffusion on undirected graphs.
//
// A cascade realization keeps every edge independently with its probability
// q. Because edges are undirected, the nodes influenced by a seed set are
// exactly the nodes in live-edge components that contain a seed, so influence
// is computed by component reachability.

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "infsamp/graph.hpp"
#include "infsamp/rng.hpp"
#include "infsamp/union_find.hpp"

namespace infsamp {

struct CascadeRealization {
  std::vector<std::uint32_t> live_edges;      // indices into graph.edges()
  std::vector<std::uint32_t> component_of;    // node -> component id
  std::vector<std::uint32_t> component_size;  // component id -> node count
};

// Keeps each edge with its probability, using the stream for `seed`.
CascadeRealization realize(const WeightedGraph& graph, std::uint64_t seed);

// Number of nodes in the union of components that contain a seed. Throws
// std::out_of_range for a seed outside the graph.
std::size_t influenced_count(const CascadeRealization& realization,
                             std::span<const NodeId> seeds);

struct InfluenceEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // unbiased sample std / sqrt(realizations)
  std::size_t realizations = 0;
  // Set when realizations == 1: std_error is reported as 0 but is unknown.
  bool std_error_unavailable = false;
};

enum class SampleMode { kFixedGraph, kRedrawnGraph };
const char* to_string(SampleMode mode);

// Where live-edge graphs come from: a fixed weighted graph, or a community
// layout whose structural graph is redrawn for every realization. For a
// layout, drawing the structure and then the cascade is equivalent to
// keeping each intra-community pair with q_sb * q_ic and each
// inter-community pair with q_inter * q_ic_inter, which is what is sampled.
//
// Non-owning: the graph or layout must outlive the model.
class DiffusionModel {
 public:
  static DiffusionModel fixed(const WeightedGraph& graph) {
    return DiffusionModel(&graph);
  }
  static DiffusionModel redrawn(const CommunityLayout& layout) {
    return DiffusionModel(&layout);
  }

  SampleMode mode() const {
    return std::holds_alternative<const WeightedGraph*>(source_)
               ? SampleMode::kFixedGraph
               : SampleMode::kRedrawnGraph;
  }
  std::size_t num_nodes() const;
  const WeightedGraph* graph() const;
  const CommunityLayout* layout() const;

  // Reusable buffers for draw_influenced; one per thread.
  struct Scratch {
    std::vector<std::uint8_t> visited;
    std::vector<NodeId> queue;
    std::vector<std::vector<NodeId>> unvisited;  // per community
    std::vector<std::uint8_t> opened;
    std::vector<std::uint32_t> opened_list;
  };

  // Draws one realization lazily around `seeds` and returns the number of
  // influenced nodes. Every pair's coin is flipped at most once, so the
  // count has the same law as influenced_count on a full realization.
  std::size_t draw_influenced(Rng& rng, std::span<const NodeId> seeds,
                              Scratch& scratch) const;

  // Draws a full realization into `dsu` (reset to num_nodes()).
  void draw_components(Rng& rng, UnionFind& dsu) const;

 private:
  explicit DiffusionModel(const WeightedGraph* graph) : source_(graph) {}
  explicit DiffusionModel(const CommunityLayout* layout) : source_(layout) {}

  std::variant<const WeightedGraph*, const CommunityLayout*> source_;
};

// Monte Carlo influence of `seeds`. Realization r uses the stream
// (seed, r), so the result does not depend on the thread count.
InfluenceEstimate estimate_influence(const DiffusionModel& model,
                                     std::span<const NodeId> seeds,
                                     std::size_t realizations,
                                     std::uint64_t seed);

inline InfluenceEstimate influence_mc(const WeightedGraph& graph,
                                      std::span<const NodeId> seeds,
                                      std::size_t realizations,
                                      std::uint64_t seed) {
  return estimate_influence(DiffusionModel::fixed(graph), seeds, realizations,
                            seed);
}

inline constexpr std::size_t kMaxExactEdges = 25;

// Exact expected influence by enumerating all 2^|E| live-edge subsets.
// Throws SizeError above kMaxExactEdges edges.
double influence_exact(const WeightedGraph& graph,
                       std::span<const NodeId> seeds);

}  // namespace infsamp
