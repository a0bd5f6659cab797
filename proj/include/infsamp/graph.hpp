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
#include <span>
#include <vector>

namespace infsamp {

using NodeId = std::uint32_t;

// Undirected edge carrying its independent-cascade activation probability.
// Stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double q = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  NodeId neighbor;
  std::uint32_t edge;
};

// Immutable undirected graph on nodes 0..n-1 with per-edge cascade
// probabilities. The constructor rejects self-loops, duplicate pairs,
// out-of-range endpoints and probabilities outside [0,1].
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  std::span<const Incidence> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Incidence> adjacency_;
};

// Block of a stochastic block model. A pair inside the block is a structural
// edge with probability q_sb and that edge is live in a cascade with
// probability q_ic, so the live-edge probability is p = q_sb * q_ic.
struct Community {
  std::size_t size = 0;
  double q_sb = 0.0;
  double q_ic = 0.0;

  double p() const { return q_sb * q_ic; }
};

// Partition of nodes into communities plus the inter-community knobs.
// Without an explicit assignment, community c owns a contiguous id block in
// order of appearance.
class CommunityLayout {
 public:
  CommunityLayout() = default;
  explicit CommunityLayout(std::vector<Community> communities,
                           double q_inter = 0.0, double q_ic_inter = 0.0);
  CommunityLayout(std::vector<Community> communities,
                  std::vector<std::uint32_t> assignment, double q_inter = 0.0,
                  double q_ic_inter = 0.0);

  std::size_t num_nodes() const { return assignment_.size(); }
  std::size_t num_communities() const { return communities_.size(); }
  std::span<const Community> communities() const { return communities_; }
  const Community& community(std::size_t c) const { return communities_[c]; }
  std::uint32_t community_of(NodeId v) const { return assignment_[v]; }
  std::span<const std::uint32_t> assignment() const { return assignment_; }
  std::span<const NodeId> members(std::size_t c) const {
    return {members_.data() + member_offsets_[c],
            members_.data() + member_offsets_[c + 1]};
  }
  double q_inter() const { return q_inter_; }
  double q_ic_inter() const { return q_ic_inter_; }
  double p_inter() const { return q_inter_ * q_ic_inter_; }

 private:
  void build_members();

  std::vector<Community> communities_;
  std::vector<std::uint32_t> assignment_;
  std::vector<std::uint32_t> member_offsets_{0};
  std::vector<NodeId> members_;
  double q_inter_ = 0.0;
  double q_ic_inter_ = 0.0;
};

// Community whose live-edge probability is p = 3 ln|C| / |C| (scaled by
// `factor`), split evenly between structure and cascade: q_sb = q_ic = sqrt(p).
Community dense_community(std::size_t size, double factor = 1.0);

enum class EdgeSampling {
  kAuto,           // Bernoulli per pair up to 10^4 nodes per block, else skip
  kBernoulli,      // one uniform per candidate pair
  kGeometricSkip,  // jump between successes with geometric gaps
};

// Draws a structural graph from the block model. Intra-community edges get
// the community's q_ic; inter-community edges get q_ic_inter and are omitted
// when that weight is zero. Deterministic in `seed`.
WeightedGraph generate_sbm(const CommunityLayout& layout, std::uint64_t seed,
                           EdgeSampling sampling = EdgeSampling::kAuto);

// G(n, p) with uniform cascade weight q_ic.
WeightedGraph generate_er(std::size_t n, double p, double q_ic,
                          std::uint64_t seed,
                          EdgeSampling sampling = EdgeSampling::kAuto);

// Barabasi-Albert preferential attachment. Nodes 0..edges_per_node form a
// clique; every later node attaches to edges_per_node distinct earlier nodes
// chosen proportionally to degree. Edge count is
// C(edges_per_node+1, 2) + (n - edges_per_node - 1) * edges_per_node.
WeightedGraph generate_pa(std::size_t n, std::size_t edges_per_node,
                          double q_ic, std::uint64_t seed);

// Size of the largest connected component and number of components.
struct ComponentSummary {
  std::size_t largest = 0;
  std::size_t count = 0;
};
ComponentSummary summarize_components(const WeightedGraph& graph);

enum class Regime { kDense, kTight, kLoose, kBorderline };

struct RegimeLabel {
  Regime regime = Regime::kBorderline;
  double epsilon = 0.0;

  bool tight() const {
    return regime == Regime::kDense || regime == Regime::kTight;
  }
};

const char* to_string(Regime regime);

// Per-community regime under margin epsilon in (0,1):
//   Dense      p > 3 ln|C| / |C| (and tight)
//   Tight      p >= (1 + eps) / |C|
//   Loose      p <= (1 - eps) / |C|
//   Borderline otherwise
std::vector<RegimeLabel> classify_regimes(const CommunityLayout& layout,
                                          double epsilon);

}  // namespace infsamp
