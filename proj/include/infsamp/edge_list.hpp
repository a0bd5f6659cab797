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

// SNAP-style edge lists.
//
// One edge per line as two whitespace-separated non-negative integers. Lines
// whose first non-blank character is '#' are comments; blank lines are
// skipped. Duplicate edges (in either orientation) are merged, keeping the
// first occurrence, and self-loops are dropped and counted.
//
// Files written by save_edge_list start with the header comment
//   # n=<n> weighted=<0|1>
// When the header is present ids must be < n and every id in [0,n) is a node,
// isolated or not, and ids are kept as-is. When weighted=1 each line carries
// a third column with the cascade probability. Without the header, ids are
// arbitrary and are renumbered densely in increasing order of original id.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infsamp/graph.hpp"

namespace infsamp {

struct LoadOptions {
  // Cascade probability for lines without a weight column.
  double default_q = 1.0;
  // Remove nodes whose degree is at most this value. One pass over the
  // degrees of the parsed graph; not repeated to a fixpoint.
  std::optional<std::size_t> prune_degree_at_most;
  // Nodes of the final graph with at least this degree become candidates.
  std::size_t candidate_degree_min = 0;
};

struct LoadedGraph {
  WeightedGraph graph;
  // Solver candidates in increasing node order.
  std::vector<NodeId> candidates;
  // original_ids[v] is the id node v carried in the file.
  std::vector<std::uint64_t> original_ids;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t nodes_pruned = 0;
};

LoadedGraph load_edge_list(const std::filesystem::path& path,
                           const LoadOptions& options = {});
LoadedGraph read_edge_list(std::istream& in, const LoadOptions& options = {},
                           const std::string& source = "<stream>");

void save_edge_list(const WeightedGraph& graph, std::ostream& out,
                    bool weighted = true);
void save_edge_list(const WeightedGraph& graph,
                    const std::filesystem::path& path, bool weighted = true);

// "node_id community_id" pairs, same comment rule as edge lists.
struct CommunityEntry {
  std::uint64_t node;
  std::uint64_t community;
};
std::vector<CommunityEntry> load_community_file(
    const std::filesystem::path& path);

// Maps file communities onto the dense node ids of `loaded`. Communities are
// renumbered densely by first appearance; nodes absent from the file (or
// pruned from the graph) get kUnassigned.
inline constexpr std::uint32_t kUnassigned = 0xffffffffu;
std::vector<std::uint32_t> assign_communities(
    const LoadedGraph& loaded, const std::vector<CommunityEntry>& entries);

}  // namespace infsamp
