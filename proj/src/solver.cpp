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

#include "infsamp/solver.hpp"

#include <algorithm>
#include <string>

#include "infsamp/error.hpp"

namespace infsamp {
namespace {

struct OverlapCheck {
  bool overlapping = false;
  bool insufficient = false;
  std::optional<double> second_order;
};

OverlapCheck check_overlap(const MarginalTable& table, NodeId a, NodeId b,
                           double alpha) {
  if (a == b) throw ValidationError("overlap needs distinct nodes");
  const auto& first = table.first(a);
  if (!first.estimate)
    throw ValidationError("overlap needs a first-order estimate for node " +
                          std::to_string(a));
  OverlapCheck check;
  if (alpha >= 1.0) return check;
  if (*first.estimate <= 0.0) {
    check.overlapping = true;
    return check;
  }
  const SecondOrderEntry second = table.second(a, b);
  if (!second.estimate) {
    check.insufficient = true;
    return check;
  }
  check.second_order = second.estimate;
  check.overlapping = *second.estimate < (1.0 - alpha) * *first.estimate;
  return check;
}

// Estimated candidates by value descending then id; unestimated ones after,
// by id.
std::vector<RankedNode> rank(const MarginalTable& table,
                             const std::vector<NodeId>& candidates) {
  std::vector<RankedNode> ranked;
  ranked.reserve(candidates.size());
  for (NodeId v : candidates) ranked.push_back({v, table.first(v).estimate});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedNode& x, const RankedNode& y) {
                     if (x.value.has_value() != y.value.has_value())
                       return x.value.has_value();
                     if (x.value && *x.value != *y.value) return *x.value > *y.value;
                     return x.node < y.node;
                   });
  if (ranked.empty() || !ranked.front().value)
    throw SolverError(
        "no candidate has enough samples for a first-order estimate (min_count " +
        std::to_string(table.min_count()) + ")");
  return ranked;
}

}  // namespace

std::vector<NodeId> resolve_candidates(const SolverConfig& config,
                                       std::size_t num_nodes) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0))
    throw ValidationError("alpha must lie in [0,1]");
  std::vector<NodeId> candidates;
  if (config.candidates) {
    candidates = *config.candidates;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    if (!candidates.empty() && candidates.back() >= num_nodes)
      throw ValidationError("candidate node out of range");
  } else {
    candidates.resize(num_nodes);
    for (NodeId v = 0; v < num_nodes; ++v) candidates[v] = v;
  }
  if (candidates.empty()) throw ValidationError("empty candidate set");
  if (config.k < 1 || config.k > candidates.size())
    throw ValidationError("k must satisfy 1 <= k <= " +
                          std::to_string(candidates.size()));
  return candidates;
}

bool overlap(const MarginalTable& table, NodeId a, NodeId b, double alpha) {
  return check_overlap(table, a, b, alpha).overlapping;
}

SolverResult run_cops(const MarginalTable& table, const SolverConfig& config) {
  const auto candidates = resolve_candidates(config, table.num_nodes());
  SolverResult result;
  result.algorithm = "cops";
  result.config = config;
  result.ordering = rank(table, candidates);

  for (const RankedNode& entry : result.ordering) {
    const NodeId a = entry.node;
    bool pruned = false;
    if (entry.value) {
      for (NodeId b : result.survivors) {
        const OverlapCheck check = check_overlap(table, a, b, config.alpha);
        if (check.insufficient) ++result.insufficient_second_order;
        if (!check.overlapping) continue;
        result.pruned.push_back({a, b, check.second_order, *entry.value});
        pruned = true;
        break;
      }
    }
    if (!pruned) result.survivors.push_back(a);
  }

  const std::size_t take = std::min(config.k, result.survivors.size());
  result.chosen.assign(result.survivors.begin(), result.survivors.begin() + take);
  for (const auto& p : result.pruned) {
    if (result.chosen.size() >= config.k) break;
    result.chosen.push_back(p.node);
    result.backfilled.push_back(p.node);
  }
  return result;
}

SolverResult run_margi(const MarginalTable& table, const SolverConfig& config) {
  const auto candidates = resolve_candidates(config, table.num_nodes());
  SolverResult result;
  result.algorithm = "margi";
  result.config = config;
  result.ordering = rank(table, candidates);
  for (const auto& entry : result.ordering) result.survivors.push_back(entry.node);
  result.chosen.assign(result.survivors.begin(),
                       result.survivors.begin() + config.k);
  return result;
}

nlohmann::json to_json(const SolverResult& result) {
  using nlohmann::json;
  auto optional_number = [](const std::optional<double>& x) {
    return x ? json(*x) : json(nullptr);
  };
  json ordering = json::array();
  const std::size_t limit =
      std::min(result.ordering.size(), kMaxExportedOrdering);
  for (std::size_t i = 0; i < limit; ++i)
    ordering.push_back({{"node", result.ordering[i].node},
                        {"value", optional_number(result.ordering[i].value)}});
  json pruned = json::array();
  for (const auto& p : result.pruned)
    pruned.push_back({{"node", p.node},
                      {"blocker", p.blocker},
                      {"second_order", optional_number(p.second_order)},
                      {"first_order", p.first_order}});
  json config = {{"k", result.config.k},
                 {"alpha", result.config.alpha},
                 {"min_count", result.config.min_count}};
  config["candidates"] = result.config.candidates
                             ? json(*result.config.candidates)
                             : json(nullptr);
  return {{"algorithm", result.algorithm},
          {"chosen", result.chosen},
          {"ordering", ordering},
          {"ordering_total", result.ordering.size()},
          {"survivors", result.survivors},
          {"pruned", pruned},
          {"backfilled", result.backfilled},
          {"insufficient_second_order", result.insufficient_second_order},
          {"config", config}};
}

SolverResult solver_result_from_json(const nlohmann::json& j) {
  auto optional_number = [](const nlohmann::json& x) -> std::optional<double> {
    if (x.is_null()) return std::nullopt;
    return x.get<double>();
  };
  SolverResult result;
  result.algorithm = j.at("algorithm").get<std::string>();
  result.chosen = j.at("chosen").get<std::vector<NodeId>>();
  for (const auto& r : j.at("ordering"))
    result.ordering.push_back(
        {r.at("node").get<NodeId>(), optional_number(r.at("value"))});
  if (j.contains("survivors"))
    result.survivors = j.at("survivors").get<std::vector<NodeId>>();
  for (const auto& p : j.at("pruned"))
    result.pruned.push_back({p.at("node").get<NodeId>(),
                             p.at("blocker").get<NodeId>(),
                             optional_number(p.at("second_order")),
                             p.at("first_order").get<double>()});
  result.backfilled = j.at("backfilled").get<std::vector<NodeId>>();
  result.insufficient_second_order =
      j.at("insufficient_second_order").get<std::size_t>();
  const auto& config = j.at("config");
  result.config.k = config.at("k").get<std::size_t>();
  result.config.alpha = config.at("alpha").get<double>();
  result.config.min_count = config.at("min_count").get<std::size_t>();
  if (!config.at("candidates").is_null())
    result.config.candidates = config.at("candidates").get<std::vector<NodeId>>();
  return result;
}

}  // namespace infsamp
