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

// Batch experiments: build a network per trial, draw samples, run the
// solvers and score every chosen set by Monte Carlo influence.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infsamp/cascade.hpp"
#include "infsamp/graph.hpp"

namespace infsamp {

enum class NetworkKind { kSbm1, kSbm2, kSbm, kEr, kPa, kFile };
const char* to_string(NetworkKind kind);

struct ExperimentConfig {
  std::string name = "experiment";
  NetworkKind network = NetworkKind::kSbm2;

  // Grid; every combination runs `trials` times.
  std::vector<std::size_t> n{400};
  std::vector<std::size_t> k{10};
  std::vector<double> alpha{0.5};
  std::vector<std::size_t> m{50000};
  std::size_t trials = 10;

  // Stochastic block models. Without explicit q_sb/q_ic every community
  // gets p_C = density * 3 ln|C| / |C| split as q_sb = q_ic = sqrt(p_C).
  std::size_t communities = 10;                  // sbm2: equal sizes
  std::optional<std::size_t> small_size;         // sbm1: default n/40
  std::vector<std::size_t> sizes;                // sbm: explicit, n ignored
  double density = 1.0;
  std::optional<double> q_sb;
  std::optional<double> q_ic;  // also the edge weight for er/pa/file
  double q_inter = 0.0;
  double q_ic_inter = 0.0;

  double avg_degree = 10.0;        // er: p = avg_degree / (n - 1)
  std::size_t edges_per_node = 5;  // pa

  std::filesystem::path file;
  std::optional<std::size_t> prune_degree_at_most;
  std::size_t candidate_degree_min = 0;

  // Defaults to redrawn for block models, fixed otherwise.
  std::optional<SampleMode> mode;

  std::size_t min_count = 30;
  std::size_t eval_realizations = 10000;
  std::vector<std::string> algorithms{"cops", "margi", "random", "greedy"};
  std::size_t greedy_realizations = 200;
  std::size_t greedy_recheck = 4;

  std::uint64_t seed = 1;
  int threads = 0;      // 0: OpenMP default
  bool timing = false;  // wall_ms is 0 unless set, keeping output bytes stable

  SampleMode effective_mode() const;
  // Throws ValidationError on bad values or a missing file.
  void validate() const;
};

// Parses `key = value` lines. Values are integers, floats, booleans,
// strings (quoted, or a bare word) and [arrays]; '#' starts a comment.
ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// INFSAMP_SEED and INFSAMP_THREADS, when set, replace seed and threads.
void apply_environment(ExperimentConfig& config);

// Canonical JSON of the settings that determine results (not threads or
// timing) and its 32-bit FNV-1a digest.
nlohmann::json to_json(const ExperimentConfig& config);
std::string config_digest(const ExperimentConfig& config);

// A built network for one (n, trial). `layout` is set for block models and
// ER; `graph` is set in fixed mode.
struct Network {
  std::shared_ptr<const CommunityLayout> layout;
  std::shared_ptr<const WeightedGraph> graph;
  std::optional<std::vector<NodeId>> candidates;
  SampleMode mode = SampleMode::kRedrawnGraph;

  std::size_t num_nodes() const;
  DiffusionModel model() const;
};

Network build_network(const ExperimentConfig& config, std::size_t n_index,
                      std::size_t trial);

// q = n / (2|E|) clamped to [0,1]: expected live degree about 1.
double make_default_q(const WeightedGraph& graph);

InfluenceEstimate evaluate_solution(const DiffusionModel& model,
                                    std::span<const NodeId> seeds,
                                    std::size_t realizations,
                                    std::uint64_t seed);

struct ResultRow {
  std::string config;
  std::string algorithm;
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double alpha = 0.0;
  std::size_t m = 0;
  InfluenceEstimate influence;
  double wall_ms = 0.0;
  std::vector<NodeId> chosen;
};

// Rows ordered by n, k, m, trial, alpha, then algorithm in config order.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kResultCsvHeader =
    "config,algorithm,trial,n,k,alpha,m,influence_mean,influence_stderr,"
    "wall_ms,chosen";
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::filesystem::path& path);

}  // namespace infsamp
