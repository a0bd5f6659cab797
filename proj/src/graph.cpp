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

#include "infsamp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infsamp/error.hpp"
#include "infsamp/rng.hpp"
#include "infsamp/union_find.hpp"
#include "pair_sampler.hpp"

namespace infsamp {
namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check_probability(double p, const char* name) {
  if (!is_probability(p))
    throw ValidationError(std::string(name) + " must lie in [0,1], got " +
                          std::to_string(p));
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ >= std::numeric_limits<NodeId>::max())
    throw ValidationError("node count exceeds 32-bit id space");
  if (edges_.size() >= std::numeric_limits<std::uint32_t>::max())
    throw ValidationError("edge count exceeds 32-bit index space");
  std::vector<std::uint32_t> degree(num_nodes_, 0);
  for (auto& e : edges_) {
    if (e.u >= num_nodes_ || e.v >= num_nodes_)
      throw ValidationError("edge endpoint out of range: (" +
                            std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") with n=" + std::to_string(num_nodes_));
    if (e.u == e.v)
      throw ValidationError("self-loop on node " + std::to_string(e.u));
    check_probability(e.q, "edge probability");
    if (e.u > e.v) std::swap(e.u, e.v);
    ++degree[e.u];
    ++degree[e.v];
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (std::size_t v = 0; v < num_nodes_; ++v)
    offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[cursor[e.u]++] = {e.v, i};
    adjacency_[cursor[e.v]++] = {e.u, i};
  }
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    auto first = adjacency_.begin() + offsets_[v];
    auto last = adjacency_.begin() + offsets_[v + 1];
    std::sort(first, last, [](const Incidence& a, const Incidence& b) {
      return a.neighbor < b.neighbor;
    });
    auto dup = std::adjacent_find(first, last,
                                  [](const Incidence& a, const Incidence& b) {
                                    return a.neighbor == b.neighbor;
                                  });
    if (dup != last)
      throw ValidationError("duplicate edge (" + std::to_string(v) + "," +
                            std::to_string(dup->neighbor) + ")");
  }
}

std::size_t WeightedGraph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes_; ++v)
    best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

CommunityLayout::CommunityLayout(std::vector<Community> communities,
                                 double q_inter, double q_ic_inter)
    : communities_(std::move(communities)),
      q_inter_(q_inter),
      q_ic_inter_(q_ic_inter) {
  std::size_t n = 0;
  for (const auto& c : communities_) n += c.size;
  assignment_.reserve(n);
  for (std::uint32_t c = 0; c < communities_.size(); ++c)
    assignment_.insert(assignment_.end(), communities_[c].size, c);
  build_members();
}

CommunityLayout::CommunityLayout(std::vector<Community> communities,
                                 std::vector<std::uint32_t> assignment,
                                 double q_inter, double q_ic_inter)
    : communities_(std::move(communities)),
      assignment_(std::move(assignment)),
      q_inter_(q_inter),
      q_ic_inter_(q_ic_inter) {
  std::vector<std::size_t> counts(communities_.size(), 0);
  for (auto c : assignment_) {
    if (c >= communities_.size())
      throw ValidationError("community index " + std::to_string(c) +
                            " out of range");
    ++counts[c];
  }
  for (std::size_t c = 0; c < communities_.size(); ++c)
    if (counts[c] != communities_[c].size)
      throw ValidationError("community " + std::to_string(c) + " declares size " +
                            std::to_string(communities_[c].size) + " but owns " +
                            std::to_string(counts[c]) + " nodes");
  build_members();
}

void CommunityLayout::build_members() {
  check_probability(q_inter_, "q_inter");
  check_probability(q_ic_inter_, "q_ic_inter");
  for (const auto& c : communities_) {
    check_probability(c.q_sb, "q_sb");
    check_probability(c.q_ic, "q_ic");
  }
  if (assignment_.size() >= std::numeric_limits<NodeId>::max())
    throw ValidationError("node count exceeds 32-bit id space");
  member_offsets_.assign(communities_.size() + 1, 0);
  for (auto c : assignment_) ++member_offsets_[c + 1];
  for (std::size_t c = 0; c < communities_.size(); ++c)
    member_offsets_[c + 1] += member_offsets_[c];
  members_.resize(assignment_.size());
  std::vector<std::uint32_t> cursor(member_offsets_.begin(),
                                    member_offsets_.end() - 1);
  for (NodeId v = 0; v < assignment_.size(); ++v)
    members_[cursor[assignment_[v]]++] = v;
}

Community dense_community(std::size_t size, double factor) {
  if (size < 2) throw ValidationError("dense community needs at least 2 nodes");
  const double p = std::min(
      1.0, factor * 3.0 * std::log(static_cast<double>(size)) /
               static_cast<double>(size));
  const double q = std::sqrt(p);
  return {size, q, q};
}

WeightedGraph generate_sbm(const CommunityLayout& layout, std::uint64_t seed,
                           EdgeSampling sampling) {
  if (layout.num_nodes() == 0) throw ValidationError("layout has no nodes");
  Rng rng(seed);
  std::vector<Edge> edges;
  const double q_ic_inter = layout.q_ic_inter();
  const double inter_p = q_ic_inter > 0.0 ? layout.q_inter() : 0.0;
  detail::sample_block_pairs(
      layout, [&](std::size_t c) { return layout.community(c).q_sb; }, inter_p,
      rng, sampling,
      [&](NodeId u, NodeId v, std::size_t c, bool inter) {
        edges.push_back({u, v, inter ? q_ic_inter : layout.community(c).q_ic});
      });
  return WeightedGraph(layout.num_nodes(), std::move(edges));
}

WeightedGraph generate_er(std::size_t n, double p, double q_ic,
                          std::uint64_t seed, EdgeSampling sampling) {
  if (n == 0) throw ValidationError("G(n,p) needs n >= 1");
  check_probability(p, "p");
  check_probability(q_ic, "q_ic");
  return generate_sbm(CommunityLayout({{n, p, q_ic}}), seed, sampling);
}

WeightedGraph generate_pa(std::size_t n, std::size_t edges_per_node,
                          double q_ic, std::uint64_t seed) {
  if (edges_per_node < 1 || n <= edges_per_node)
    throw ValidationError("preferential attachment needs n > edges_per_node >= 1");
  check_probability(q_ic, "q_ic");
  Rng rng(seed);
  std::vector<Edge> edges;
  // Each edge contributes both endpoints, so a uniform pick from this pool is
  // a degree-proportional pick of a node.
  std::vector<NodeId> pool;
  const std::size_t seed_nodes = edges_per_node + 1;
  for (NodeId u = 0; u < seed_nodes; ++u)
    for (NodeId v = u + 1; v < seed_nodes; ++v) {
      edges.push_back({u, v, q_ic});
      pool.push_back(u);
      pool.push_back(v);
    }
  std::vector<NodeId> targets;
  for (std::size_t t = seed_nodes; t < n; ++t) {
    targets.clear();
    while (targets.size() < edges_per_node) {
      const NodeId pick = pool[rng.below(pool.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end())
        targets.push_back(pick);
    }
    const auto node = static_cast<NodeId>(t);
    for (NodeId target : targets) {
      edges.push_back({target, node, q_ic});
      pool.push_back(target);
      pool.push_back(node);
    }
  }
  return WeightedGraph(n, std::move(edges));
}

ComponentSummary summarize_components(const WeightedGraph& graph) {
  UnionFind dsu(graph.num_nodes());
  for (const auto& e : graph.edges()) dsu.unite(e.u, e.v);
  ComponentSummary summary;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (dsu.find(v) != v) continue;
    ++summary.count;
    summary.largest = std::max<std::size_t>(summary.largest, dsu.root_size(v));
  }
  return summary;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kDense:
      return "dense";
    case Regime::kTight:
      return "tight";
    case Regime::kLoose:
      return "loose";
    case Regime::kBorderline:
      return "borderline";
  }
  return "unknown";
}

std::vector<RegimeLabel> classify_regimes(const CommunityLayout& layout,
                                          double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("regime margin must lie in (0,1)");
  std::vector<RegimeLabel> labels;
  labels.reserve(layout.num_communities());
  for (const auto& c : layout.communities()) {
    const double size = static_cast<double>(c.size);
    const double p = c.p();
    Regime regime = Regime::kBorderline;
    if (c.size > 0 && p >= (1.0 + epsilon) / size) {
      regime = p > 3.0 * std::log(size) / size ? Regime::kDense : Regime::kTight;
    } else if (c.size > 0 && p <= (1.0 - epsilon) / size) {
      regime = Regime::kLoose;
    }
    labels.push_back({regime, epsilon});
  }
  return labels;
}

}  // namespace infsamp
