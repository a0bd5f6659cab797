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

// infsamp: command-line front end for network generation, sampling,
// solving, evaluation and batch experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "infsamp/baselines.hpp"
#include "infsamp/edge_list.hpp"
#include "infsamp/error.hpp"
#include "infsamp/experiment.hpp"
#include "infsamp/parallel.hpp"
#include "infsamp/sampling.hpp"
#include "infsamp/solver.hpp"

namespace {

using namespace infsamp;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

// A network for commands that take either --graph (a saved edge list, fixed
// mode) or --config (the config's network for one trial).
struct Source {
  std::string graph_path;
  std::string config_path;
  std::size_t trial = 0;
  std::optional<std::string> mode;

  LoadedGraph loaded;
  Network network;

  void add_to(CLI::App* cmd) {
    auto* g = cmd->add_option("--graph", graph_path, "Edge-list file (fixed mode)");
    auto* c = cmd->add_option("--config", config_path,
                              "Experiment config whose network is used");
    g->excludes(c);
    cmd->add_option("--trial", trial, "Trial index of the config's network");
    cmd->add_option("--mode", mode, "fixed or redrawn (with --config)")
        ->check(CLI::IsMember({"fixed", "redrawn"}));
  }

  DiffusionModel build(const Globals& globals) {
    if (!graph_path.empty()) {
      if (mode && *mode != "fixed")
        throw ValidationError("a saved graph only supports fixed mode");
      loaded = load_edge_list(graph_path);
      network.graph = std::make_shared<WeightedGraph>(loaded.graph);
      network.mode = SampleMode::kFixedGraph;
      return network.model();
    }
    if (config_path.empty()) throw ValidationError("pass --graph or --config");
    ExperimentConfig config = load_experiment_config(config_path);
    apply_environment(config);
    if (globals.seed) config.seed = *globals.seed;
    if (mode)
      config.mode = *mode == "fixed" ? SampleMode::kFixedGraph
                                     : SampleMode::kRedrawnGraph;
    config.k = {1};
    config.validate();
    network = build_network(config, 0, trial);
    return network.model();
  }
};

std::vector<NodeId> parse_seed_list(const std::string& text) {
  std::vector<NodeId> seeds;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find_first_of(";, ", start);
    if (end == std::string::npos) end = text.size();
    if (end > start) seeds.push_back(static_cast<NodeId>(std::stoul(text.substr(start, end - start))));
    start = end + 1;
  }
  return seeds;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization from samples"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Master RNG seed");
  app.add_option("--threads", globals.threads, "Worker threads (0: default)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a network and save it as an edge list");
  ExperimentConfig gen_config;
  std::string gen_network = "sbm2", gen_config_path, gen_out, gen_communities_out;
  std::size_t gen_n = 400, gen_trial = 0;
  std::optional<std::size_t> gen_small;
  std::optional<double> gen_q_sb, gen_q_ic;
  gen->add_option("--network", gen_network, "sbm1, sbm2, sbm, er or pa")
      ->check(CLI::IsMember({"sbm1", "sbm2", "sbm", "er", "pa"}));
  gen->add_option("--config", gen_config_path, "Take the network from a config");
  gen->add_option("--n", gen_n, "Number of nodes");
  gen->add_option("--communities", gen_config.communities, "sbm2 community count");
  gen->add_option("--sizes", gen_config.sizes, "sbm community sizes");
  gen->add_option("--small-size", gen_small, "sbm1 expected small-community size");
  gen->add_option("--density", gen_config.density, "Factor on 3 ln|C|/|C|");
  gen->add_option("--q-sb", gen_q_sb, "Intra-community edge probability");
  gen->add_option("--q-ic", gen_q_ic, "Cascade probability");
  gen->add_option("--q-inter", gen_config.q_inter, "Inter-community edge probability");
  gen->add_option("--q-ic-inter", gen_config.q_ic_inter, "Inter-community cascade probability");
  gen->add_option("--avg-degree", gen_config.avg_degree, "er average degree");
  gen->add_option("--edges-per-node", gen_config.edges_per_node, "pa edges per new node");
  gen->add_option("--trial", gen_trial, "Trial index (selects the stream)");
  gen->add_option("--out", gen_out, "Edge-list output")->required();
  gen->add_option("--communities-out", gen_communities_out,
                  "Write 'node community' lines for block models");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw (seed set, influence) samples");
  Source sample_source;
  sample_source.add_to(sample);
  std::size_t sample_k = 10, sample_m = 50000;
  std::string sample_out;
  sample->add_option("--k", sample_k, "Expected seed-set size (marginals k/n)");
  sample->add_option("--m", sample_m, "Number of samples");
  sample->add_option("--out", sample_out, "Sample CSV (sidecar written next to it)")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Select a seed set");
  Source solve_source;
  solve_source.add_to(solve);
  std::string algo = "cops", samples_path, solve_out;
  SolverConfig solver;
  std::size_t greedy_realizations = 200, greedy_recheck = 4;
  solve->add_option("--algo", algo, "cops, margi, random or greedy")
      ->check(CLI::IsMember({"cops", "margi", "random", "greedy"}));
  solve->add_option("--samples", samples_path, "Sample CSV (cops, margi, random)");
  solve->add_option("--k", solver.k, "Seed-set size");
  solve->add_option("--alpha", solver.alpha, "Acceptable overlap");
  solve->add_option("--min-count", solver.min_count, "Estimator sample threshold");
  solve->add_option("--greedy-realizations", greedy_realizations, "Monte Carlo budget per evaluation");
  solve->add_option("--greedy-recheck", greedy_recheck, "Re-check factor (0 disables)");
  solve->add_option("--out", solve_out, "Result JSON (stdout when omitted)");

  // eval
  auto* eval = app.add_subcommand("eval", "Monte Carlo influence of a seed set");
  Source eval_source;
  eval_source.add_to(eval);
  std::string eval_solution, eval_seeds;
  std::size_t eval_realizations = 10000;
  auto* sol = eval->add_option("--solution", eval_solution, "Result JSON from solve");
  eval->add_option("--seeds", eval_seeds, "Seed nodes, ';'-separated")->excludes(sol);
  eval->add_option("--realizations", eval_realizations, "Monte Carlo realizations");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a configured experiment grid");
  std::string exp_config, exp_out;
  std::vector<double> exp_alpha;
  std::vector<std::size_t> exp_k, exp_m;
  std::optional<std::size_t> exp_trials;
  bool exp_timing = false;
  experiment->add_option("--config", exp_config, "Config file")->required()->check(CLI::ExistingFile);
  experiment->add_option("--alpha", exp_alpha, "Override alpha");
  experiment->add_option("--k", exp_k, "Override k");
  experiment->add_option("--m", exp_m, "Override m");
  experiment->add_option("--trials", exp_trials, "Override trial count");
  experiment->add_flag("--timing", exp_timing, "Record wall_ms (output no longer byte-stable)");
  experiment->add_option("--out", exp_out, "Result CSV (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (globals.threads) set_num_threads(*globals.threads);
    const std::uint64_t seed = globals.seed.value_or(1);

    if (*gen) {
      ExperimentConfig config = gen_config;
      if (!gen_config_path.empty()) config = load_experiment_config(gen_config_path);
      else {
        config.network = gen_network == "sbm1"   ? NetworkKind::kSbm1
                         : gen_network == "sbm2" ? NetworkKind::kSbm2
                         : gen_network == "sbm"  ? NetworkKind::kSbm
                         : gen_network == "er"   ? NetworkKind::kEr
                                                 : NetworkKind::kPa;
        config.n = {gen_n};
        config.small_size = gen_small;
        config.q_sb = gen_q_sb;
        config.q_ic = gen_q_ic;
      }
      apply_environment(config);
      if (globals.seed) config.seed = *globals.seed;
      config.mode = SampleMode::kFixedGraph;
      config.k = {1};
      config.validate();
      const Network net = build_network(config, 0, gen_trial);
      save_edge_list(*net.graph, gen_out);
      if (!gen_communities_out.empty() && net.layout) {
        std::ofstream out(gen_communities_out);
        out << "# node community\n";
        for (NodeId v = 0; v < net.layout->num_nodes(); ++v)
          out << v << ' ' << net.layout->community_of(v) << '\n';
      }
      std::cerr << "nodes " << net.graph->num_nodes() << ", edges "
                << net.graph->num_edges() << '\n';
    } else if (*sample) {
      const DiffusionModel model = sample_source.build(globals);
      const std::size_t n = model.num_nodes();
      SampleSet set = draw_samples(model, uniform_expected_k(n, sample_k),
                                   sample_m, seed);
      save_samples(set, sample_out);
      std::cerr << "wrote " << set.size() << " samples ("
                << to_string(set.mode) << ")\n";
    } else if (*solve) {
      SolverResult result;
      if (algo == "cops" || algo == "margi" || algo == "random") {
        if (samples_path.empty()) throw ValidationError("--samples is required");
        const SampleSet set = load_samples(samples_path);
        if (algo == "random") {
          result = run_random(set.num_nodes, solver.k, seed);
        } else {
          const MarginalTable table(set, solver.min_count);
          result = algo == "cops" ? run_cops(table, solver) : run_margi(table, solver);
        }
      } else {
        const DiffusionModel model = solve_source.build(globals);
        result = run_greedy(model, solver.k, {greedy_realizations, greedy_recheck},
                            seed, solve_source.network.candidates);
      }
      emit(to_json(result).dump(2) + "\n", solve_out);
    } else if (*eval) {
      const DiffusionModel model = eval_source.build(globals);
      std::vector<NodeId> seeds;
      if (!eval_solution.empty()) {
        std::ifstream in(eval_solution);
        if (!in) throw ParseError(eval_solution, 0, "cannot open solution");
        seeds = nlohmann::json::parse(in).at("chosen").get<std::vector<NodeId>>();
      } else {
        seeds = parse_seed_list(eval_seeds);
      }
      const InfluenceEstimate est = evaluate_solution(model, seeds, eval_realizations, seed);
      nlohmann::json j = {{"seeds", seeds},
                          {"mean", est.mean},
                          {"std_error", est.std_error},
                          {"realizations", est.realizations}};
      std::cout << j.dump() << '\n';
    } else if (*experiment) {
      ExperimentConfig config = load_experiment_config(exp_config);
      apply_environment(config);
      if (globals.seed) config.seed = *globals.seed;
      if (globals.threads) config.threads = *globals.threads;
      if (!exp_alpha.empty()) config.alpha = exp_alpha;
      if (!exp_k.empty()) config.k = exp_k;
      if (!exp_m.empty()) config.m = exp_m;
      if (exp_trials) config.trials = *exp_trials;
      if (exp_timing) config.timing = true;
      const auto rows = run_experiment(config);
      if (exp_out.empty() || exp_out == "-") {
        write_results_csv(rows, std::cout);
      } else {
        write_results_csv(rows, std::filesystem::path(exp_out));
        std::cerr << "wrote " << rows.size() << " rows to " << exp_out << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
