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

// Community pruning from samples (COPS) and its no-pruning special case
// (MargI).
//
// Nodes are ranked by first-order estimate, descending, ties by node id.
// Scanning the ranking, a node is pruned when its contribution overlaps
// that of a node kept earlier in the scan; the first k kept nodes are the
// solution. Overlap(a, b, alpha) holds when
//
//     v~_b(a) < (1 - alpha) * v~(a)
//
// so alpha = 1 never prunes. Degenerate inputs:
//   * v~(a) <= 0: a overlaps every earlier survivor.
//   * v~_b(a) insufficient: no overlap (keep a), counted in the result.
//   * v~(a) insufficient: a is ranked after every estimated node, by id, and
//     is never pruned.
// If fewer than k nodes survive, the solution is topped up with pruned nodes
// in ranking order and those are listed in `backfilled`.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infsamp/estimators.hpp"
#include "infsamp/graph.hpp"
#include "infsamp/sampling.hpp"

namespace infsamp {

struct SolverConfig {
  std::size_t k = 10;
  double alpha = 0.5;
  std::size_t min_count = kDefaultMinCount;
  // Restricts the solution to these nodes when set.
  std::optional<std::vector<NodeId>> candidates;
};

struct RankedNode {
  NodeId node = 0;
  std::optional<double> value;

  friend bool operator==(const RankedNode&, const RankedNode&) = default;
};

struct PrunedNode {
  NodeId node = 0;
  NodeId blocker = 0;
  std::optional<double> second_order;  // v~_blocker(node); empty if v~(node) <= 0
  double first_order = 0.0;

  friend bool operator==(const PrunedNode&, const PrunedNode&) = default;
};

struct SolverResult {
  std::string algorithm;
  std::vector<NodeId> chosen;
  // COPS/MargI: candidates by first-order estimate. Greedy: picks with their
  // estimated marginal gains. Random: the picks, no values.
  std::vector<RankedNode> ordering;
  std::vector<NodeId> survivors;
  std::vector<PrunedNode> pruned;
  std::vector<NodeId> backfilled;
  std::size_t insufficient_second_order = 0;
  SolverConfig config;

  friend bool operator==(const SolverResult& a, const SolverResult& b) {
    return a.algorithm == b.algorithm && a.chosen == b.chosen &&
           a.ordering == b.ordering && a.survivors == b.survivors &&
           a.pruned == b.pruned && a.backfilled == b.backfilled &&
           a.insufficient_second_order == b.insufficient_second_order;
  }
};

// Validates k, alpha and candidate ids against n; returns the candidate list
// (all nodes when unset), sorted and deduplicated.
std::vector<NodeId> resolve_candidates(const SolverConfig& config,
                                       std::size_t num_nodes);

bool overlap(const MarginalTable& table, NodeId a, NodeId b, double alpha);

SolverResult run_cops(const MarginalTable& table, const SolverConfig& config);
SolverResult run_margi(const MarginalTable& table, const SolverConfig& config);

inline SolverResult run_cops(const SampleSet& samples,
                             const SolverConfig& config) {
  return run_cops(MarginalTable(samples, config.min_count), config);
}
inline SolverResult run_margi(const SampleSet& samples,
                              const SolverConfig& config) {
  return run_margi(MarginalTable(samples, config.min_count), config);
}

// JSON export. The ordering is truncated to its first kMaxExportedOrdering
// entries.
inline constexpr std::size_t kMaxExportedOrdering = 5000;
nlohmann::json to_json(const SolverResult& result);
SolverResult solver_result_from_json(const nlohmann::json& j);

}  // namespace infsamp
