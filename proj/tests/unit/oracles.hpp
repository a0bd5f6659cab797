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

// Reference computations for tests. Nothing here calls the library's
// algorithms: influence is brute-forced by BFS over every live-edge subset,
// and marginal contributions are exact sums over all seed sets.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "infsamp/graph.hpp"

namespace oracle {

using infsamp::Edge;
using infsamp::NodeId;
using infsamp::WeightedGraph;

// f(mask) for every seed-set bitmask over n <= 16 nodes, by enumerating all
// live-edge subsets (|E| <= 20) and running a BFS from each seed set.
inline std::vector<double> all_set_values(std::size_t n,
                                          const std::vector<Edge>& edges) {
  const std::size_t e = edges.size();
  const std::size_t sets = std::size_t{1} << n;
  std::vector<double> f(sets, 0.0);
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<int> label(n);
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << e); ++live) {
    double prob = 1.0;
    for (auto& a : adj) a.clear();
    for (std::size_t i = 0; i < e; ++i) {
      if (live >> i & 1) {
        prob *= edges[i].q;
        adj[edges[i].u].push_back(edges[i].v);
        adj[edges[i].v].push_back(edges[i].u);
      } else {
        prob *= 1.0 - edges[i].q;
      }
    }
    if (prob == 0.0) continue;
    // Component labels by BFS, then each set's count is the size of the
    // union of its members' components.
    std::fill(label.begin(), label.end(), -1);
    std::vector<int> comp_size;
    for (std::size_t s = 0; s < n; ++s) {
      if (label[s] >= 0) continue;
      const int id = static_cast<int>(comp_size.size());
      comp_size.push_back(0);
      std::queue<NodeId> q;
      q.push(static_cast<NodeId>(s));
      label[s] = id;
      while (!q.empty()) {
        const NodeId x = q.front();
        q.pop();
        ++comp_size[id];
        for (NodeId y : adj[x])
          if (label[y] < 0) {
            label[y] = id;
            q.push(y);
          }
      }
    }
    std::vector<std::uint64_t> comp_mask(comp_size.size(), 0);
    for (std::size_t v = 0; v < n; ++v) comp_mask[label[v]] |= std::uint64_t{1} << v;
    for (std::size_t mask = 0; mask < sets; ++mask) {
      std::uint64_t covered = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) covered |= comp_mask[label[v]];
      f[mask] += prob * static_cast<double>(std::popcount(covered));
    }
  }
  return f;
}

inline std::size_t mask_of(const std::vector<NodeId>& seeds) {
  std::size_t m = 0;
  for (NodeId v : seeds) m |= std::size_t{1} << v;
  return m;
}

inline double set_probability(std::size_t mask, const std::vector<double>& p,
                              std::size_t skip_mask = 0) {
  double prob = 1.0;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (skip_mask >> v & 1) continue;
    prob *= (mask >> v & 1) ? p[v] : 1.0 - p[v];
  }
  return prob;
}

// v(a) = E[f(S + a) - f(S) | a not in S] under the product distribution p.
inline double first_order(const std::vector<double>& f,
                          const std::vector<double>& p, NodeId a) {
  const std::size_t bit = std::size_t{1} << a;
  double v = 0.0;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (mask & bit) continue;
    v += set_probability(mask, p, bit) * (f[mask | bit] - f[mask]);
  }
  return v;
}

// v_b(a) = E[f(S + a) - f(S) | a not in S, b in S].
inline double second_order(const std::vector<double>& f,
                           const std::vector<double>& p, NodeId a, NodeId b) {
  const std::size_t abit = std::size_t{1} << a;
  const std::size_t bbit = std::size_t{1} << b;
  double v = 0.0;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if ((mask & abit) || !(mask & bbit)) continue;
    v += set_probability(mask, p, abit | bbit) * (f[mask | abit] - f[mask]);
  }
  return v;
}

// E[f(S) | membership of the nodes in `fixed_mask` equals `fixed_values`].
inline double conditional_mean(const std::vector<double>& f,
                               const std::vector<double>& p,
                               std::size_t fixed_mask,
                               std::size_t fixed_values) {
  double v = 0.0;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if ((mask & fixed_mask) != fixed_values) continue;
    v += set_probability(mask, p, fixed_mask) * f[mask];
  }
  return v;
}

// Best value of f over all sets of exactly k nodes.
inline double brute_force_optimum(const std::vector<double>& f, std::size_t n,
                                  std::size_t k) {
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == k)
      best = std::max(best, f[mask]);
  return best;
}

// Random simple graph with the given edge count; each q is drawn uniformly
// from {0, 0.1, ..., 1}.
inline WeightedGraph random_graph(std::size_t n, std::size_t num_edges,
                                  std::mt19937_64& gen) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), gen);
  num_edges = std::min(num_edges, pairs.size());
  std::uniform_int_distribution<int> weight(0, 10);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < num_edges; ++i)
    edges.push_back({pairs[i].first, pairs[i].second, weight(gen) / 10.0});
  return WeightedGraph(n, std::move(edges));
}

inline std::vector<Edge> edges_of(const WeightedGraph& g) {
  return {g.edges().begin(), g.edges().end()};
}

// Connected components of the structural graph (every edge present).
inline std::vector<std::size_t> component_sizes(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<int> seen(n, 0);
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t count = 0;
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      ++count;
      for (const auto& inc : g.neighbors(x))
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
    }
    sizes.push_back(count);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// Root of beta = 1 - exp(-c * beta) in (0, 1] for c > 1, by fixed-point
// iteration from 1.
inline double giant_fraction(double c) {
  double beta = 1.0;
  for (int i = 0; i < 10000; ++i) beta = 1.0 - std::exp(-c * beta);
  return beta;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

// Critical KS value at level 0.001: c(a) * sqrt((n + m) / (n m)), c = 1.949.
inline double ks_critical_001(std::size_t n, std::size_t m) {
  return 1.949 * std::sqrt(static_cast<double>(n + m) /
                           (static_cast<double>(n) * static_cast<double>(m)));
}

inline double binomial_sd(double n, double p) { return std::sqrt(n * p * (1 - p)); }

}  // namespace oracle
