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

// Reference algorithms around COPS: Greedy with value-query access to the
// influence function (an upper benchmark) and a uniformly random set.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "infsamp/cascade.hpp"
#include "infsamp/solver.hpp"

namespace infsamp {

struct OracleBudget {
  std::size_t realizations_per_eval = 200;
  // The two best candidates of an iteration are re-scored on
  // recheck_factor * realizations_per_eval fresh realizations and the
  // higher one is taken. 0 disables the re-check.
  std::size_t recheck_factor = 4;
};

// Greedy over Monte Carlo marginal gains. In iteration t all candidates are
// scored on the same realizations, drawn from streams (seed, t, 0, r);
// the re-check uses (seed, t, 1, r). Ties go to the smaller node id.
// `ordering` lists the picks with their estimated gains.
SolverResult run_greedy(const DiffusionModel& model, std::size_t k,
                        const OracleBudget& budget, std::uint64_t seed,
                        std::optional<std::vector<NodeId>> candidates = {});

// Greedy over an arbitrary set function. Gains within 1e-12 (relative) of
// the best count as ties and go to the smaller id.
using SetValueOracle = std::function<double(std::span<const NodeId>)>;
SolverResult greedy_with_oracle(const SetValueOracle& value,
                                std::size_t num_nodes, std::size_t k,
                                std::optional<std::vector<NodeId>> candidates = {});

// Greedy with influence_exact as the oracle (small graphs only).
SolverResult run_greedy_exact(const WeightedGraph& graph, std::size_t k,
                              std::optional<std::vector<NodeId>> candidates = {});

// Uniform k-subset of the candidates (all nodes when unset), in draw order.
SolverResult run_random(std::size_t num_nodes, std::size_t k,
                        std::uint64_t seed,
                        std::optional<std::vector<NodeId>> candidates = {});

}  // namespace infsamp
