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

#include "infsamp/cascade.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "infsamp/error.hpp"
#include "pair_sampler.hpp"
#include "parallel_for.hpp"

namespace infsamp {
namespace {

void check_seeds(std::span<const NodeId> seeds, std::size_t n) {
  for (NodeId s : seeds)
    if (s >= n)
      throw std::out_of_range("seed " + std::to_string(s) +
                              " outside graph of " + std::to_string(n) +
                              " nodes");
}

}  // namespace

CascadeRealization realize(const WeightedGraph& graph, std::uint64_t seed) {
  Rng rng(seed);
  CascadeRealization out;
  UnionFind dsu(graph.num_nodes());
  const auto edges = graph.edges();
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    if (!rng.bernoulli(edges[i].q)) continue;
    out.live_edges.push_back(i);
    dsu.unite(edges[i].u, edges[i].v);
  }
  const std::size_t n = graph.num_nodes();
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> id_of_root(n, kNone);
  out.component_of.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const std::uint32_t root = dsu.find(v);
    if (id_of_root[root] == kNone) {
      id_of_root[root] = static_cast<std::uint32_t>(out.component_size.size());
      out.component_size.push_back(dsu.root_size(root));
    }
    out.component_of[v] = id_of_root[root];
  }
  return out;
}

std::size_t influenced_count(const CascadeRealization& realization,
                             std::span<const NodeId> seeds) {
  check_seeds(seeds, realization.component_of.size());
  std::vector<std::uint8_t> counted(realization.component_size.size(), 0);
  std::size_t total = 0;
  for (NodeId s : seeds) {
    const std::uint32_t c = realization.component_of[s];
    if (counted[c]) continue;
    counted[c] = 1;
    total += realization.component_size[c];
  }
  return total;
}

const char* to_string(SampleMode mode) {
  return mode == SampleMode::kFixedGraph ? "fixed" : "redrawn";
}

std::size_t DiffusionModel::num_nodes() const {
  return std::visit([](const auto* source) { return source->num_nodes(); },
                    source_);
}

const WeightedGraph* DiffusionModel::graph() const {
  const auto* const* graph = std::get_if<const WeightedGraph*>(&source_);
  return graph ? *graph : nullptr;
}

const CommunityLayout* DiffusionModel::layout() const {
  const auto* const* layout = std::get_if<const CommunityLayout*>(&source_);
  return layout ? *layout : nullptr;
}

std::size_t DiffusionModel::draw_influenced(Rng& rng,
                                            std::span<const NodeId> seeds,
                                            Scratch& scratch) const {
  const std::size_t n = num_nodes();
  check_seeds(seeds, n);
  auto& visited = scratch.visited;
  auto& queue = scratch.queue;
  if (visited.size() != n) visited.assign(n, 0);
  queue.clear();
  for (NodeId s : seeds) {
    if (visited[s]) continue;
    visited[s] = 1;
    queue.push_back(s);
  }

  if (const WeightedGraph* g = graph()) {
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Incidence& inc : g->neighbors(queue[head])) {
        if (visited[inc.neighbor]) continue;
        if (!rng.bernoulli(g->edge(inc.edge).q)) continue;
        visited[inc.neighbor] = 1;
        queue.push_back(inc.neighbor);
      }
    }
  } else {
    const CommunityLayout& lay = *layout();
    const std::size_t blocks = lay.num_communities();
    if (scratch.unvisited.size() != blocks) {
      scratch.unvisited.assign(blocks, {});
      scratch.opened.assign(blocks, 0);
    }
    scratch.opened_list.clear();
    // Pairs from the node being expanded to every still-unvisited node of a
    // block; successes are moved to the queue.
    auto expand = [&](std::uint32_t block, double p) {
      if (p <= 0.0) return;
      auto& pending = scratch.unvisited[block];
      if (!scratch.opened[block]) {
        scratch.opened[block] = 1;
        scratch.opened_list.push_back(block);
        pending.clear();
        for (NodeId v : lay.members(block))
          if (!visited[v]) pending.push_back(v);
      }
      std::size_t i = 0;
      while (i < pending.size()) {
        const NodeId v = pending[i];
        if (visited[v]) {
          pending[i] = pending.back();
          pending.pop_back();
          continue;
        }
        if (rng.bernoulli(p)) {
          visited[v] = 1;
          queue.push_back(v);
          pending[i] = pending.back();
          pending.pop_back();
          continue;
        }
        ++i;
      }
    };
    const double p_inter = lay.p_inter();
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t own = lay.community_of(queue[head]);
      expand(own, lay.community(own).p());
      if (p_inter > 0.0)
        for (std::uint32_t b = 0; b < blocks; ++b)
          if (b != own) expand(b, p_inter);
    }
    for (auto b : scratch.opened_list) scratch.opened[b] = 0;
  }

  for (NodeId v : queue) visited[v] = 0;
  return queue.size();
}

void DiffusionModel::draw_components(Rng& rng, UnionFind& dsu) const {
  dsu.reset(num_nodes());
  if (const WeightedGraph* g = graph()) {
    for (const Edge& e : g->edges())
      if (rng.bernoulli(e.q)) dsu.unite(e.u, e.v);
    return;
  }
  const CommunityLayout& lay = *layout();
  detail::sample_block_pairs(
      lay, [&](std::size_t c) { return lay.community(c).p(); }, lay.p_inter(),
      rng, EdgeSampling::kAuto,
      [&](NodeId u, NodeId v, std::size_t, bool) { dsu.unite(u, v); });
}

InfluenceEstimate estimate_influence(const DiffusionModel& model,
                                     std::span<const NodeId> seeds,
                                     std::size_t realizations,
                                     std::uint64_t seed) {
  if (realizations == 0)
    throw ValidationError("influence estimate needs at least 1 realization");
  check_seeds(seeds, model.num_nodes());
  InfluenceEstimate out;
  out.realizations = realizations;
  out.std_error_unavailable = realizations == 1;
  if (seeds.empty()) return out;

  constexpr std::size_t kChunk = 4096;
  struct Partial {
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
  };
  std::vector<Partial> partial(detail::chunk_count(realizations, kChunk));
  detail::parallel_chunks(
      realizations, kChunk,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        DiffusionModel::Scratch scratch;
        Partial acc;
        for (std::size_t r = begin; r < end; ++r) {
          Rng rng(seed, {r});
          const std::uint64_t count = model.draw_influenced(rng, seeds, scratch);
          acc.sum += count;
          acc.sum_sq += static_cast<unsigned __int128>(count) * count;
        }
        partial[chunk] = acc;
      });

  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto r = static_cast<unsigned __int128>(realizations);
  out.mean = static_cast<double>(static_cast<long double>(sum) /
                                 static_cast<long double>(r));
  if (realizations > 1) {
    // Exact integer numerator of the unbiased variance.
    const unsigned __int128 numer = r * sum_sq - sum * sum;
    const long double var = static_cast<long double>(numer) /
                            static_cast<long double>(r * (r - 1));
    out.std_error = static_cast<double>(
        std::sqrt(var / static_cast<long double>(realizations)));
  }
  return out;
}

namespace {

// Union-find with undo, tracking how many nodes share a set with a seed.
class RollbackCoverage {
 public:
  RollbackCoverage(std::size_t n, std::span<const NodeId> seeds)
      : parent_(n), size_(n, 1), seeded_(n, 0) {
    for (std::uint32_t v = 0; v < n; ++v) parent_[v] = v;
    for (NodeId s : seeds) {
      if (seeded_[s]) continue;
      seeded_[s] = 1;
      ++covered_;
    }
  }

  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      history_.push_back({kNoop, 0, 0});
      return;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    const std::uint32_t old_covered = covered_;
    if (seeded_[a] && !seeded_[b]) covered_ += size_[b];
    if (!seeded_[a] && seeded_[b]) covered_ += size_[a];
    history_.push_back({b, seeded_[a], old_covered});
    parent_[b] = a;
    size_[a] += size_[b];
    seeded_[a] = seeded_[a] | seeded_[b];
  }

  void undo() {
    const Step step = history_.back();
    history_.pop_back();
    if (step.child == kNoop) return;
    const std::uint32_t root = parent_[step.child];
    parent_[step.child] = step.child;
    size_[root] -= size_[step.child];
    seeded_[root] = step.root_seeded;
    covered_ = step.covered;
  }

  std::uint32_t covered() const { return covered_; }

 private:
  static constexpr std::uint32_t kNoop = 0xffffffffu;
  struct Step {
    std::uint32_t child;
    std::uint8_t root_seeded;
    std::uint32_t covered;
  };
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint8_t> seeded_;
  std::vector<Step> history_;
  std::uint32_t covered_ = 0;
};

long double enumerate(std::span<const Edge> edges, std::size_t i,
                      RollbackCoverage& state) {
  if (i == edges.size()) return state.covered();
  const long double q = edges[i].q;
  long double total = 0.0L;
  if (q > 0.0L) {
    state.unite(edges[i].u, edges[i].v);
    total += q * enumerate(edges, i + 1, state);
    state.undo();
  }
  if (q < 1.0L) total += (1.0L - q) * enumerate(edges, i + 1, state);
  return total;
}

}  // namespace

double influence_exact(const WeightedGraph& graph,
                       std::span<const NodeId> seeds) {
  if (graph.num_edges() > kMaxExactEdges)
    throw SizeError("exact influence enumerates 2^|E| subsets; |E|=" +
                    std::to_string(graph.num_edges()) + " exceeds " +
                    std::to_string(kMaxExactEdges));
  check_seeds(seeds, graph.num_nodes());
  RollbackCoverage state(graph.num_nodes(), seeds);
  return static_cast<double>(enumerate(graph.edges(), 0, state));
}

}  // namespace infsamp
