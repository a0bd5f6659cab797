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

#include "infsamp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "infsamp/baselines.hpp"
#include "infsamp/edge_list.hpp"
#include "infsamp/error.hpp"
#include "infsamp/estimators.hpp"
#include "infsamp/parallel.hpp"
#include "infsamp/sampling.hpp"
#include "infsamp/solver.hpp"
#include "parallel_for.hpp"

namespace infsamp {
namespace {

// Stream tags keep the network, samples, oracle and evaluation draws apart.
enum StreamTag : std::uint64_t {
  kNetworkStream = 0x6e6574,
  kSampleStream = 0x736d70,
  kRandomStream = 0x726e64,
  kGreedyStream = 0x677264,
  kEvalStream = 0x65766c,
};

const std::set<std::string> kAlgorithms{"cops", "margi", "random", "greedy"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Drops a '#' comment that is not inside a double-quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

template <class T>
std::vector<T> as_list(const nlohmann::json& value) {
  if (value.is_array()) return value.get<std::vector<T>>();
  return {value.get<T>()};
}

std::size_t as_count(const nlohmann::json& value) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw ValidationError("expected a non-negative integer");
  return value.get<std::size_t>();
}

std::vector<std::size_t> as_counts(const nlohmann::json& value) {
  std::vector<std::size_t> out;
  if (value.is_array()) {
    for (const auto& v : value) out.push_back(as_count(v));
  } else {
    out.push_back(as_count(value));
  }
  return out;
}

NetworkKind parse_network(const std::string& s) {
  if (s == "sbm1") return NetworkKind::kSbm1;
  if (s == "sbm2") return NetworkKind::kSbm2;
  if (s == "sbm") return NetworkKind::kSbm;
  if (s == "er") return NetworkKind::kEr;
  if (s == "pa") return NetworkKind::kPa;
  if (s == "file") return NetworkKind::kFile;
  throw ValidationError("unknown network '" + s + "'");
}

SampleMode parse_mode(const std::string& s) {
  if (s == "fixed") return SampleMode::kFixedGraph;
  if (s == "redrawn") return SampleMode::kRedrawnGraph;
  throw ValidationError("unknown mode '" + s + "'");
}

void set_key(ExperimentConfig& c, const std::string& key,
             const nlohmann::json& v) {
  if (key == "name") c.name = v.get<std::string>();
  else if (key == "network") c.network = parse_network(v.get<std::string>());
  else if (key == "n") c.n = as_counts(v);
  else if (key == "k") c.k = as_counts(v);
  else if (key == "alpha") c.alpha = as_list<double>(v);
  else if (key == "m") c.m = as_counts(v);
  else if (key == "trials") c.trials = as_count(v);
  else if (key == "communities") c.communities = as_count(v);
  else if (key == "small_size") c.small_size = as_count(v);
  else if (key == "sizes") c.sizes = as_counts(v);
  else if (key == "density") c.density = v.get<double>();
  else if (key == "q_sb") c.q_sb = v.get<double>();
  else if (key == "q_ic") c.q_ic = v.get<double>();
  else if (key == "q_inter") c.q_inter = v.get<double>();
  else if (key == "q_ic_inter") c.q_ic_inter = v.get<double>();
  else if (key == "avg_degree") c.avg_degree = v.get<double>();
  else if (key == "edges_per_node") c.edges_per_node = as_count(v);
  else if (key == "file") c.file = v.get<std::string>();
  else if (key == "prune_degree_at_most") c.prune_degree_at_most = as_count(v);
  else if (key == "candidate_degree_min") c.candidate_degree_min = as_count(v);
  else if (key == "mode") c.mode = parse_mode(v.get<std::string>());
  else if (key == "min_count") c.min_count = as_count(v);
  else if (key == "eval_realizations") c.eval_realizations = as_count(v);
  else if (key == "algorithms") c.algorithms = as_list<std::string>(v);
  else if (key == "greedy_realizations") c.greedy_realizations = as_count(v);
  else if (key == "greedy_recheck") c.greedy_recheck = as_count(v);
  else if (key == "seed") c.seed = v.get<std::uint64_t>();
  else if (key == "threads") c.threads = v.get<int>();
  else if (key == "timing") c.timing = v.get<bool>();
  else throw ValidationError("unknown key '" + key + "'");
}

bool is_block_model(NetworkKind kind) {
  return kind == NetworkKind::kSbm1 || kind == NetworkKind::kSbm2 ||
         kind == NetworkKind::kSbm;
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

Community make_community(const ExperimentConfig& c, std::size_t size) {
  if (c.q_sb && c.q_ic) return {size, *c.q_sb, *c.q_ic};
  if (size < 2) return {size, 0.0, 0.0};
  return dense_community(size, c.density);
}

// One community of n/4 nodes, then the other nodes spread uniformly over
// round(3n/4 / small_size) communities (empty ones dropped).
std::vector<std::size_t> sbm1_sizes(const ExperimentConfig& c, std::size_t n,
                                    Rng& rng) {
  const std::size_t big = n / 4;
  const std::size_t rest = n - big;
  const std::size_t small = c.small_size.value_or(std::max<std::size_t>(1, n / 40));
  const std::size_t count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(rest) /
                                               static_cast<double>(small))));
  std::vector<std::size_t> counts(count, 0);
  for (std::size_t i = 0; i < rest; ++i) ++counts[rng.below(count)];
  std::vector<std::size_t> sizes{big};
  for (std::size_t s : counts)
    if (s > 0) sizes.push_back(s);
  if (sizes.front() == 0) sizes.erase(sizes.begin());
  return sizes;
}

std::vector<std::size_t> block_sizes(const ExperimentConfig& c, std::size_t n,
                                     Rng& rng) {
  switch (c.network) {
    case NetworkKind::kSbm1:
      return sbm1_sizes(c, n, rng);
    case NetworkKind::kSbm2: {
      std::vector<std::size_t> sizes(c.communities, n / c.communities);
      for (std::size_t i = 0; i < n % c.communities; ++i) ++sizes[i];
      return sizes;
    }
    default:
      return c.sizes;
  }
}

WeightedGraph reweighted(const WeightedGraph& graph, double q) {
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (Edge& e : edges) e.q = q;
  return WeightedGraph(graph.num_nodes(), std::move(edges));
}

void append_double(std::string& out, double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  out.append(buffer, ptr);
}

std::string format_row(const ResultRow& row) {
  std::string line = row.config;
  line += ',';
  line += row.algorithm;
  line += ',' + std::to_string(row.trial) + ',' + std::to_string(row.n) + ',' +
          std::to_string(row.k) + ',';
  append_double(line, row.alpha);
  line += ',' + std::to_string(row.m) + ',';
  append_double(line, row.influence.mean);
  line += ',';
  append_double(line, row.influence.std_error);
  line += ',';
  append_double(line, row.wall_ms);
  line += ',';
  for (std::size_t i = 0; i < row.chosen.size(); ++i) {
    if (i) line += ';';
    line += std::to_string(row.chosen[i]);
  }
  return line;
}

}  // namespace

const char* to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::kSbm1: return "sbm1";
    case NetworkKind::kSbm2: return "sbm2";
    case NetworkKind::kSbm: return "sbm";
    case NetworkKind::kEr: return "er";
    case NetworkKind::kPa: return "pa";
    case NetworkKind::kFile: return "file";
  }
  return "?";
}

SampleMode ExperimentConfig::effective_mode() const {
  if (mode) return *mode;
  return is_block_model(network) ? SampleMode::kRedrawnGraph
                                 : SampleMode::kFixedGraph;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
  };
  require(trials >= 1, "trials must be at least 1");
  require(eval_realizations >= 1, "eval_realizations must be at least 1");
  require(greedy_realizations >= 1, "greedy_realizations must be at least 1");
  require(!k.empty() && !alpha.empty() && !m.empty(), "empty k, alpha or m list");
  for (std::size_t x : k) require(x >= 1, "k must be at least 1");
  for (std::size_t x : m) require(x >= 1, "m must be at least 1");
  for (double a : alpha) require(in_unit(a), "alpha must lie in [0,1]");
  require(!algorithms.empty(), "no algorithms selected");
  for (const auto& a : algorithms)
    require(kAlgorithms.count(a) == 1, "unknown algorithm '" + a + "'");
  require(std::set<std::string>(algorithms.begin(), algorithms.end()).size() ==
              algorithms.size(),
          "duplicate algorithm");
  require(threads >= 0, "threads must be non-negative");
  require(in_unit(q_inter) && in_unit(q_ic_inter),
          "inter-community probabilities must lie in [0,1]");
  if (q_sb) require(in_unit(*q_sb), "q_sb must lie in [0,1]");
  if (q_ic) require(in_unit(*q_ic), "q_ic must lie in [0,1]");

  if (network == NetworkKind::kSbm) {
    require(!sizes.empty(), "network sbm needs community sizes");
    for (std::size_t s : sizes) require(s >= 1, "community sizes must be at least 1");
  } else if (network != NetworkKind::kFile) {
    require(!n.empty(), "empty n list");
    for (std::size_t x : n) require(x >= 1, "n must be at least 1");
  }
  if (is_block_model(network)) {
    require(q_sb.has_value() == q_ic.has_value(),
            "block models take q_sb and q_ic together");
    require(density > 0.0, "density must be positive");
  }
  if (network == NetworkKind::kSbm2) {
    require(communities >= 1, "communities must be at least 1");
    for (std::size_t x : n) require(communities <= x, "more communities than nodes");
  }
  if (network == NetworkKind::kSbm1 && small_size)
    require(*small_size >= 1, "small_size must be at least 1");
  if (network == NetworkKind::kEr) require(avg_degree >= 0.0, "avg_degree must be non-negative");
  if (network == NetworkKind::kPa) {
    require(edges_per_node >= 1, "edges_per_node must be at least 1");
    for (std::size_t x : n) require(x > edges_per_node, "pa needs n > edges_per_node");
  }
  if (network == NetworkKind::kFile)
    require(std::filesystem::is_regular_file(file),
            "network file '" + file.string() + "' does not exist");
  if (effective_mode() == SampleMode::kRedrawnGraph)
    require(is_block_model(network) || network == NetworkKind::kEr,
            "redrawn mode needs a block model or er network");
  if (network != NetworkKind::kFile) {
    const std::vector<std::size_t> ns =
        network == NetworkKind::kSbm
            ? std::vector<std::size_t>{[&] {
                std::size_t t = 0;
                for (std::size_t s : sizes) t += s;
                return t;
              }()}
            : n;
    for (std::size_t x : ns)
      for (std::size_t kk : k) require(kk <= x, "k exceeds the number of nodes");
  }
}

ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& source) {
  ExperimentConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError(source, number, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string raw = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || raw.empty())
      throw ParseError(source, number, "expected 'key = value'");
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
      // Bare words such as `network = sbm2`.
      if (raw.find_first_of("\"[]{},") != std::string::npos)
        throw ParseError(source, number, "malformed value '" + raw + "'");
      value = raw;
    }
    try {
      set_key(config, key, value);
    } catch (const ValidationError& e) {
      throw ParseError(source, number, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, number, "bad value for '" + key + "'");
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open config");
  ExperimentConfig config = parse_experiment_config(in, path.string());
  if (!config.file.empty() && config.file.is_relative())
    config.file = path.parent_path() / config.file;
  return config;
}

void apply_environment(ExperimentConfig& config) {
  auto read = [](const char* name, auto& target) {
    const char* value = std::getenv(name);
    if (!value || !*value) return;
    std::remove_reference_t<decltype(target)> parsed{};
    const char* end = value + std::char_traits<char>::length(value);
    const auto [ptr, ec] = std::from_chars(value, end, parsed);
    if (ec != std::errc() || ptr != end)
      throw ValidationError(std::string("bad value in ") + name);
    target = parsed;
  };
  read("INFSAMP_SEED", config.seed);
  read("INFSAMP_THREADS", config.threads);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j = {
      {"name", c.name},
      {"network", to_string(c.network)},
      {"n", c.n},
      {"k", c.k},
      {"alpha", c.alpha},
      {"m", c.m},
      {"trials", c.trials},
      {"communities", c.communities},
      {"sizes", c.sizes},
      {"density", c.density},
      {"q_inter", c.q_inter},
      {"q_ic_inter", c.q_ic_inter},
      {"avg_degree", c.avg_degree},
      {"edges_per_node", c.edges_per_node},
      {"file", c.file.string()},
      {"candidate_degree_min", c.candidate_degree_min},
      {"mode", to_string(c.effective_mode())},
      {"min_count", c.min_count},
      {"eval_realizations", c.eval_realizations},
      {"algorithms", c.algorithms},
      {"greedy_realizations", c.greedy_realizations},
      {"greedy_recheck", c.greedy_recheck},
      {"seed", c.seed},
  };
  auto optional = [](const auto& x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
  };
  j["small_size"] = optional(c.small_size);
  j["q_sb"] = optional(c.q_sb);
  j["q_ic"] = optional(c.q_ic);
  j["prune_degree_at_most"] = optional(c.prune_degree_at_most);
  return j;
}

std::string config_digest(const ExperimentConfig& config) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : to_json(config).dump()) {
    h ^= ch;
    h *= 16777619u;
  }
  char buffer[9];
  std::snprintf(buffer, sizeof buffer, "%08x", h);
  return buffer;
}

std::size_t Network::num_nodes() const {
  return graph ? graph->num_nodes() : layout->num_nodes();
}

DiffusionModel Network::model() const {
  return mode == SampleMode::kFixedGraph ? DiffusionModel::fixed(*graph)
                                         : DiffusionModel::redrawn(*layout);
}

Network build_network(const ExperimentConfig& config, std::size_t n_index,
                      std::size_t trial) {
  Network net;
  net.mode = config.effective_mode();
  const std::uint64_t base =
      derive_seed(config.seed, {kNetworkStream, n_index, trial});
  const std::size_t n =
      config.network == NetworkKind::kSbm || config.network == NetworkKind::kFile
          ? 0
          : config.n.at(n_index);

  if (is_block_model(config.network)) {
    Rng rng(base, {0});
    std::vector<Community> communities;
    for (std::size_t s : block_sizes(config, n, rng))
      communities.push_back(make_community(config, s));
    net.layout = std::make_shared<CommunityLayout>(
        std::move(communities), config.q_inter, config.q_ic_inter);
    if (net.mode == SampleMode::kFixedGraph)
      net.graph = std::make_shared<WeightedGraph>(
          generate_sbm(*net.layout, derive_seed(base, {1})));
    return net;
  }

  switch (config.network) {
    case NetworkKind::kEr: {
      const double p =
          n > 1 ? std::min(1.0, config.avg_degree / static_cast<double>(n - 1))
                : 0.0;
      if (net.mode == SampleMode::kRedrawnGraph) {
        // Expected-degree version of the default weight.
        const double q = config.q_ic.value_or(
            config.avg_degree > 0.0 ? std::min(1.0, 1.0 / config.avg_degree) : 1.0);
        net.layout = std::make_shared<CommunityLayout>(
            std::vector<Community>{{n, p, q}});
        return net;
      }
      WeightedGraph g = generate_er(n, p, 1.0, derive_seed(base, {1}));
      const double q = config.q_ic ? *config.q_ic : make_default_q(g);
      net.graph = std::make_shared<WeightedGraph>(reweighted(g, q));
      return net;
    }
    case NetworkKind::kPa: {
      WeightedGraph g =
          generate_pa(n, config.edges_per_node, 1.0, derive_seed(base, {1}));
      const double q = config.q_ic ? *config.q_ic : make_default_q(g);
      net.graph = std::make_shared<WeightedGraph>(reweighted(g, q));
      return net;
    }
    case NetworkKind::kFile: {
      LoadOptions options;
      options.prune_degree_at_most = config.prune_degree_at_most;
      options.candidate_degree_min = config.candidate_degree_min;
      LoadedGraph loaded = load_edge_list(config.file, options);
      const double q = config.q_ic ? *config.q_ic : make_default_q(loaded.graph);
      net.graph = std::make_shared<WeightedGraph>(reweighted(loaded.graph, q));
      if (config.candidate_degree_min > 0) {
        if (loaded.candidates.empty())
          throw ValidationError("no node reaches candidate_degree_min");
        net.candidates = std::move(loaded.candidates);
      }
      return net;
    }
    default:
      break;
  }
  throw ValidationError("unsupported network");
}

double make_default_q(const WeightedGraph& graph) {
  if (graph.num_edges() == 0)
    throw ValidationError("default edge weight needs at least one edge");
  return std::clamp(static_cast<double>(graph.num_nodes()) /
                        (2.0 * static_cast<double>(graph.num_edges())),
                    0.0, 1.0);
}

InfluenceEstimate evaluate_solution(const DiffusionModel& model,
                                    std::span<const NodeId> seeds,
                                    std::size_t realizations,
                                    std::uint64_t seed) {
  return estimate_influence(model, seeds, realizations, seed);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.threads > 0) set_num_threads(config.threads);

  struct Cell {
    std::size_t n_index, k_index, m_index, trial;
  };
  const std::size_t n_count =
      config.network == NetworkKind::kSbm || config.network == NetworkKind::kFile
          ? 1
          : config.n.size();
  std::vector<Cell> cells;
  for (std::size_t ni = 0; ni < n_count; ++ni)
    for (std::size_t ki = 0; ki < config.k.size(); ++ki)
      for (std::size_t mi = 0; mi < config.m.size(); ++mi)
        for (std::size_t t = 0; t < config.trials; ++t)
          cells.push_back({ni, ki, mi, t});

  const std::string label = config.name + "@" + config_digest(config);
  std::vector<std::vector<ResultRow>> out(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());

  auto run_cell = [&](const Cell& cell) {
    using Clock = std::chrono::steady_clock;
    const Network net = build_network(config, cell.n_index, cell.trial);
    const DiffusionModel model = net.model();
    const std::size_t n = net.num_nodes();
    const std::size_t k = config.k[cell.k_index];
    const std::size_t m = config.m[cell.m_index];
    const std::initializer_list<std::uint64_t> where = {
        cell.n_index, cell.trial, cell.k_index, cell.m_index};
    auto stream = [&](std::uint64_t tag) {
      std::uint64_t s = derive_seed(config.seed, {tag});
      return derive_seed(s, where);
    };
    if (k > n) throw ValidationError("k exceeds the number of nodes");

    auto elapsed_ms = [&](Clock::time_point start) {
      return config.timing
                 ? std::chrono::duration<double, std::milli>(Clock::now() - start)
                       .count()
                 : 0.0;
    };
    const bool needs_samples =
        std::any_of(config.algorithms.begin(), config.algorithms.end(),
                    [](const std::string& a) { return a == "cops" || a == "margi"; });
    const auto sample_start = Clock::now();
    std::optional<MarginalTable> table;
    if (needs_samples) {
      const SampleSet samples = draw_samples(model, uniform_expected_k(n, k), m,
                                             stream(kSampleStream));
      table.emplace(samples, config.min_count);
    }
    const double sample_ms = elapsed_ms(sample_start);

    std::map<std::vector<NodeId>, InfluenceEstimate> scores;
    auto score = [&](const std::vector<NodeId>& chosen) {
      auto it = scores.find(chosen);
      if (it == scores.end())
        it = scores
                 .emplace(chosen, evaluate_solution(model, chosen,
                                                    config.eval_realizations,
                                                    stream(kEvalStream)))
                 .first;
      return it->second;
    };

    // Alpha-independent algorithms run once per cell.
    std::map<std::string, std::pair<std::vector<NodeId>, double>> fixed_runs;
    for (const auto& algo : config.algorithms) {
      if (algo == "cops") continue;
      const auto start = Clock::now();
      SolverResult result;
      SolverConfig solver;
      solver.k = k;
      solver.min_count = config.min_count;
      solver.candidates = net.candidates;
      if (algo == "margi") {
        result = run_margi(*table, solver);
      } else if (algo == "random") {
        result = run_random(n, k, stream(kRandomStream), net.candidates);
      } else {
        result = run_greedy(model, k,
                            {config.greedy_realizations, config.greedy_recheck},
                            stream(kGreedyStream), net.candidates);
      }
      double ms = elapsed_ms(start);
      if (algo == "margi") ms += sample_ms;
      fixed_runs[algo] = {result.chosen, ms};
    }

    std::vector<ResultRow>& rows = out[&cell - cells.data()];
    for (double alpha : config.alpha) {
      for (const auto& algo : config.algorithms) {
        ResultRow row;
        row.config = label;
        row.algorithm = algo;
        row.trial = cell.trial;
        row.n = n;
        row.k = k;
        row.alpha = alpha;
        row.m = m;
        if (algo == "cops") {
          const auto start = Clock::now();
          SolverConfig solver;
          solver.k = k;
          solver.alpha = alpha;
          solver.min_count = config.min_count;
          solver.candidates = net.candidates;
          row.chosen = run_cops(*table, solver).chosen;
          row.wall_ms = elapsed_ms(start) + sample_ms;
        } else {
          row.chosen = fixed_runs[algo].first;
          row.wall_ms = fixed_runs[algo].second;
        }
        row.influence = score(row.chosen);
        rows.push_back(std::move(row));
      }
    }
  };

  detail::parallel_chunks(cells.size(), 1, [&](std::size_t c, std::size_t, std::size_t) {
    try {
      run_cell(cells[c]);
    } catch (const SolverError& e) {
      const Cell& cell = cells[c];
      errors[c] = std::make_exception_ptr(SolverError(
          "trial " + std::to_string(cell.trial) + " (n index " +
          std::to_string(cell.n_index) + ", k=" + std::to_string(config.k[cell.k_index]) +
          ", m=" + std::to_string(config.m[cell.m_index]) + "): " + e.what()));
    } catch (...) {
      errors[c] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ResultRow> rows;
  for (auto& cell_rows : out)
    for (auto& row : cell_rows) rows.push_back(std::move(row));
  return rows;
}

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultCsvHeader << '\n';
  for (const auto& row : rows) out << format_row(row) << '\n';
}

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  write_results_csv(rows, out);
}

}  // namespace infsamp
