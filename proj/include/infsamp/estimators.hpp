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

// Marginal contributions estimated from (seed set, value) samples.
//
// First order:  v~(a)   = mean(value | a in S)       - mean(value | a not in S)
// Second order: v~_b(a) = mean(value | a in S, b in S) - mean(value | a not in S, b in S)
//
// Under a product distribution the second difference equals the expected
// gain of adding a to a random set that contains b but not a. An entry whose
// conditioning classes hold fewer than min_count samples is flagged
// insufficient and carries no estimate.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "infsamp/graph.hpp"
#include "infsamp/sampling.hpp"

namespace infsamp {

inline constexpr std::size_t kDefaultMinCount = 30;

struct FirstOrderEntry {
  std::optional<double> estimate;
  std::size_t count_in = 0;   // samples containing a
  std::size_t count_out = 0;  // samples not containing a

  bool insufficient() const { return !estimate.has_value(); }
};

struct SecondOrderEntry {
  std::optional<double> estimate;
  std::size_t count_ab = 0;      // samples containing a and b
  std::size_t count_not_a_b = 0;  // samples containing b but not a

  bool insufficient() const { return !estimate.has_value(); }
};

// First-order table plus a lazily filled, thread-safe second-order cache.
// Keeps its own compact index of the samples, so the SampleSet may be
// discarded after construction.
class MarginalTable {
 public:
  MarginalTable(const SampleSet& samples, std::size_t min_count);
  MarginalTable(MarginalTable&&) noexcept;
  MarginalTable& operator=(MarginalTable&&) noexcept;
  ~MarginalTable();

  std::size_t num_nodes() const { return first_.size(); }
  std::size_t num_samples() const { return values_.size(); }
  std::size_t min_count() const { return min_count_; }

  const FirstOrderEntry& first(NodeId a) const { return first_.at(a); }
  std::span<const FirstOrderEntry> first_order() const { return first_; }

  // v~_b(a). Throws ValidationError when a == b or either is out of range.
  SecondOrderEntry second(NodeId a, NodeId b) const;
  // Number of distinct pairs computed so far.
  std::size_t cached_pairs() const;

 private:
  SecondOrderEntry compute_second(NodeId a, NodeId b) const;

  std::size_t min_count_;
  std::vector<double> values_;
  // Samples containing each node, ascending: CSR over nodes.
  std::vector<std::size_t> member_offsets_;
  std::vector<std::uint32_t> member_samples_;
  std::vector<double> sum_in_;
  double total_sum_ = 0.0;
  std::vector<FirstOrderEntry> first_;

  struct Cache;
  std::unique_ptr<Cache> cache_;
};

inline MarginalTable first_order(const SampleSet& samples,
                                 std::size_t min_count = kDefaultMinCount) {
  return MarginalTable(samples, min_count);
}

inline SecondOrderEntry second_order(const MarginalTable& table, NodeId a,
                                     NodeId b) {
  return table.second(a, b);
}

// CSV "node,v1,count_in,count_out,flag"; v1 empty and flag "insufficient"
// for flagged rows, flag "ok" otherwise.
void write_marginals_csv(const MarginalTable& table, std::ostream& out);
void write_marginals_csv(const MarginalTable& table,
                         const std::filesystem::path& path);

}  // namespace infsamp
