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

#include "infsamp/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "infsamp/error.hpp"
#include "parallel_for.hpp"

namespace infsamp {
namespace {

std::vector<NodeId> checked_candidates(std::size_t num_nodes, std::size_t k,
                                       std::optional<std::vector<NodeId>> set) {
  if (set && set->empty()) throw ValidationError("empty candidate set");
  SolverConfig config;
  config.k = k;
  config.candidates = std::move(set);
  return resolve_candidates(config, num_nodes);
}

// Summed marginal gain of every candidate over `count` realizations drawn
// from streams (seed, t, phase, r). Entries for nodes already chosen are 0.
std::vector<std::uint64_t> score_candidates(const DiffusionModel& model,
                                            std::span<const NodeId> chosen,
                                            std::span<const NodeId> candidates,
                                            std::size_t count,
                                            std::uint64_t seed, std::uint64_t t,
                                            std::uint64_t phase) {
  constexpr std::size_t kChunk = 32;
  const std::size_t n = model.num_nodes();
  std::vector<std::vector<std::uint64_t>> partial(
      detail::chunk_count(count, kChunk));
  detail::parallel_chunks(
      count, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        UnionFind dsu(n);
        std::vector<std::uint8_t> covered(n, 0);
        std::vector<std::uint64_t> gains(candidates.size(), 0);
        for (std::size_t r = begin; r < end; ++r) {
          Rng rng(seed, {t, phase, r});
          model.draw_components(rng, dsu);
          for (NodeId s : chosen) covered[dsu.find(s)] = 1;
          for (std::size_t i = 0; i < candidates.size(); ++i) {
            const std::uint32_t root = dsu.find(candidates[i]);
            if (!covered[root]) gains[i] += dsu.root_size(root);
          }
          for (NodeId s : chosen) covered[dsu.find(s)] = 0;
        }
        partial[chunk] = std::move(gains);
      });
  std::vector<std::uint64_t> total(candidates.size(), 0);
  for (const auto& gains : partial)
    for (std::size_t i = 0; i < gains.size(); ++i) total[i] += gains[i];
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (std::find(chosen.begin(), chosen.end(), candidates[i]) != chosen.end())
      total[i] = 0;
  return total;
}

}  // namespace

SolverResult run_greedy(const DiffusionModel& model, std::size_t k,
                        const OracleBudget& budget, std::uint64_t seed,
                        std::optional<std::vector<NodeId>> candidates) {
  if (budget.realizations_per_eval < 1)
    throw ValidationError("greedy needs at least 1 realization per evaluation");
  const auto pool = checked_candidates(model.num_nodes(), k, std::move(candidates));
  SolverResult result;
  result.algorithm = "greedy";
  result.config.k = k;
  result.config.alpha = 0.0;
  result.config.min_count = 0;
  result.config.candidates = pool;

  std::vector<std::uint8_t> taken(pool.size(), 0);
  for (std::uint64_t t = 0; t < k; ++t) {
    const auto gains = score_candidates(model, result.chosen, pool,
                                        budget.realizations_per_eval, seed, t, 0);
    // Best and runner-up among untaken candidates; ties keep the smaller id.
    std::size_t best = pool.size();
    std::size_t second = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      if (best == pool.size() || gains[i] > gains[best]) {
        second = best;
        best = i;
      } else if (second == pool.size() || gains[i] > gains[second]) {
        second = i;
      }
    }
    double gain = static_cast<double>(gains[best]) /
                  static_cast<double>(budget.realizations_per_eval);
    if (budget.recheck_factor > 0 && second != pool.size()) {
      const std::size_t count =
          budget.recheck_factor * budget.realizations_per_eval;
      const NodeId pair[2] = {pool[best], pool[second]};
      const auto recheck =
          score_candidates(model, result.chosen, pair, count, seed, t, 1);
      // `best` wins ties: it has the smaller id or the higher first score.
      const bool reversed = recheck[1] > recheck[0];
      if (reversed) best = second;
      gain = static_cast<double>(recheck[reversed ? 1 : 0]) /
             static_cast<double>(count);
    }
    taken[best] = 1;
    result.chosen.push_back(pool[best]);
    result.ordering.push_back({pool[best], gain});
  }
  result.survivors = result.chosen;
  return result;
}

SolverResult greedy_with_oracle(const SetValueOracle& value,
                                std::size_t num_nodes, std::size_t k,
                                std::optional<std::vector<NodeId>> candidates) {
  const auto pool = checked_candidates(num_nodes, k, std::move(candidates));
  SolverResult result;
  result.algorithm = "greedy";
  result.config.k = k;
  result.config.alpha = 0.0;
  result.config.min_count = 0;
  result.config.candidates = pool;
  double current = value(result.chosen);
  std::vector<NodeId> trial;
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<double> gains(pool.size(), -std::numeric_limits<double>::infinity());
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (std::find(result.chosen.begin(), result.chosen.end(), pool[i]) !=
          result.chosen.end())
        continue;
      trial = result.chosen;
      trial.push_back(pool[i]);
      gains[i] = value(trial) - current;
      best_gain = std::max(best_gain, gains[i]);
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(best_gain));
    std::size_t pick = 0;
    while (gains[pick] < best_gain - slack) ++pick;
    result.chosen.push_back(pool[pick]);
    result.ordering.push_back({pool[pick], gains[pick]});
    current += gains[pick];
  }
  result.survivors = result.chosen;
  return result;
}

SolverResult run_greedy_exact(const WeightedGraph& graph, std::size_t k,
                              std::optional<std::vector<NodeId>> candidates) {
  if (graph.num_edges() > kMaxExactEdges)
    throw SizeError("exact greedy needs at most " +
                    std::to_string(kMaxExactEdges) + " edges");
  return greedy_with_oracle(
      [&](std::span<const NodeId> set) { return influence_exact(graph, set); },
      graph.num_nodes(), k, std::move(candidates));
}

SolverResult run_random(std::size_t num_nodes, std::size_t k,
                        std::uint64_t seed,
                        std::optional<std::vector<NodeId>> candidates) {
  auto pool = checked_candidates(num_nodes, k, std::move(candidates));
  SolverResult result;
  result.algorithm = "random";
  result.config.k = k;
  result.config.alpha = 0.0;
  result.config.min_count = 0;
  result.config.candidates = pool;
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    result.chosen.push_back(pool[i]);
    result.ordering.push_back({pool[i], std::nullopt});
  }
  result.survivors = result.chosen;
  return result;
}

}  // namespace infsamp
