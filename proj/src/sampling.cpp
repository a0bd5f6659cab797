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

#include "infsamp/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infsamp/error.hpp"
#include "parallel_for.hpp"

namespace infsamp {
namespace {

std::string shortest(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, ptr);
}

bool all_equal(std::span<const double> xs) {
  return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) ==
         xs.end();
}

}  // namespace

double ProductDistribution::bound(std::size_t n) {
  if (n == 0) return 0.5;
  const double nd = static_cast<double>(n);
  return std::min(1.0 / (nd * nd * nd), 0.5);
}

ProductDistribution::ProductDistribution(std::vector<double> marginals)
    : marginals_(std::move(marginals)) {
  const double b = bound(marginals_.size());
  for (std::size_t v = 0; v < marginals_.size(); ++v) {
    const double p = marginals_[v];
    if (!(p >= b && p <= 1.0 - b))
      throw ValidationError("marginal of node " + std::to_string(v) + " = " +
                            shortest(p) + " outside [" + shortest(b) + ", " +
                            shortest(1.0 - b) + "]");
  }
}

ProductDistribution ProductDistribution::clamped(std::vector<double> marginals) {
  const double b = bound(marginals.size());
  for (double& p : marginals) {
    if (std::isnan(p)) throw ValidationError("marginal is NaN");
    p = std::clamp(p, b, 1.0 - b);
  }
  return ProductDistribution(std::move(marginals));
}

std::vector<NodeId> ProductDistribution::draw(Rng& rng) const {
  std::vector<NodeId> seeds;
  const std::size_t n = marginals_.size();
  if (n > 64 && all_equal(marginals_) && marginals_[0] < 0.25) {
    // Equal small marginals: jump between included nodes.
    const double log1m_p = std::log1p(-marginals_[0]);
    std::uint64_t v = rng.geometric_skip(log1m_p);
    while (v < n) {
      seeds.push_back(static_cast<NodeId>(v));
      const std::uint64_t skip = rng.geometric_skip(log1m_p);
      if (skip >= n - v) break;
      v += 1 + skip;
    }
    return seeds;
  }
  for (NodeId v = 0; v < n; ++v)
    if (rng.bernoulli(marginals_[v])) seeds.push_back(v);
  return seeds;
}

ProductDistribution uniform_expected_k(std::size_t n, std::size_t k) {
  if (n == 0 || k < 1 || k > n)
    throw ValidationError("expected set size k must satisfy 1 <= k <= n");
  return ProductDistribution::clamped(
      std::vector<double>(n, static_cast<double>(k) / static_cast<double>(n)));
}

SampleSet draw_samples(const DiffusionModel& model,
                       const ProductDistribution& dist, std::size_t m,
                       std::uint64_t seed) {
  if (m == 0) throw ValidationError("sample count m must be at least 1");
  if (dist.size() != model.num_nodes())
    throw ValidationError("distribution covers " + std::to_string(dist.size()) +
                          " nodes but the network has " +
                          std::to_string(model.num_nodes()));
  SampleSet out;
  out.mode = model.mode();
  out.num_nodes = model.num_nodes();
  out.rng_seed = seed;
  out.marginals.assign(dist.marginals().begin(), dist.marginals().end());
  out.samples.resize(m);
  detail::parallel_chunks(
      m, 1024, [&](std::size_t, std::size_t begin, std::size_t end) {
        DiffusionModel::Scratch scratch;
        for (std::size_t i = begin; i < end; ++i) {
          Rng rng(seed, {i});
          Sample& sample = out.samples[i];
          sample.seeds = dist.draw(rng);
          sample.value = static_cast<double>(
              model.draw_influenced(rng, sample.seeds, scratch));
        }
      });
  return out;
}

double empirical_nonubiquity(const SampleSet& samples,
                             std::span<const NodeId> community) {
  if (community.empty())
    throw ValidationError("non-ubiquity needs a nonempty community");
  if (samples.samples.empty()) throw ValidationError("empty sample set");
  std::vector<std::uint8_t> member(samples.num_nodes, 0);
  for (NodeId v : community) {
    if (v >= samples.num_nodes)
      throw ValidationError("community node out of range");
    member[v] = 1;
  }
  std::size_t missing = 0;
  for (const auto& s : samples.samples)
    if (std::none_of(s.seeds.begin(), s.seeds.end(),
                     [&](NodeId v) { return member[v] != 0; }))
      ++missing;
  return static_cast<double>(missing) /
         static_cast<double>(samples.samples.size());
}

std::string marginals_digest(std::span<const double> marginals) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (double p : marginals) {
    feed(shortest(p));
    feed(",");
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto path = csv;
  path += ".meta.jsonl";
  return path;
}

void save_samples(const SampleSet& samples, const std::filesystem::path& csv) {
  {
    std::ofstream out(csv);
    if (!out) throw ParseError(csv.string(), 0, "cannot open file for writing");
    out << "sample_id,value,seeds\n";
    for (std::size_t i = 0; i < samples.samples.size(); ++i) {
      const Sample& s = samples.samples[i];
      out << i << ',' << shortest(s.value) << ',';
      for (std::size_t j = 0; j < s.seeds.size(); ++j)
        out << (j ? ";" : "") << s.seeds[j];
      out << '\n';
    }
    if (!out) throw ParseError(csv.string(), 0, "write error");
  }
  const auto meta_path = sidecar_path(csv);
  std::ofstream meta(meta_path);
  if (!meta)
    throw ParseError(meta_path.string(), 0, "cannot open file for writing");
  nlohmann::json header = {
      {"kind", "sample_set"},
      {"mode", to_string(samples.mode)},
      {"rng_seed", samples.rng_seed},
      {"graph_seed", samples.graph_seed ? nlohmann::json(*samples.graph_seed)
                                        : nlohmann::json(nullptr)},
      {"num_nodes", samples.num_nodes},
      {"num_samples", samples.samples.size()},
      {"marginals_digest", marginals_digest(samples.marginals)},
  };
  meta << header.dump() << '\n';
  meta << nlohmann::json({{"marginals", samples.marginals}}).dump() << '\n';
  if (!meta) throw ParseError(meta_path.string(), 0, "write error");
}

SampleSet load_samples(const std::filesystem::path& csv) {
  SampleSet out;
  const auto meta_path = sidecar_path(csv);
  const std::string meta_name = meta_path.string();
  {
    std::ifstream meta(meta_path);
    if (!meta) throw ParseError(meta_name, 0, "cannot open file");
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::string> digest;
    while (std::getline(meta, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(meta_name, line_no, e.what());
      }
      if (j.contains("kind")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "fixed") {
          out.mode = SampleMode::kFixedGraph;
        } else if (mode == "redrawn") {
          out.mode = SampleMode::kRedrawnGraph;
        } else {
          throw ParseError(meta_name, line_no, "unknown mode '" + mode + "'");
        }
        out.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        if (!j.at("graph_seed").is_null())
          out.graph_seed = j.at("graph_seed").get<std::uint64_t>();
        out.num_nodes = j.at("num_nodes").get<std::size_t>();
        digest = j.at("marginals_digest").get<std::string>();
      } else if (j.contains("marginals")) {
        out.marginals = j.at("marginals").get<std::vector<double>>();
      }
    }
    if (!digest) throw ParseError(meta_name, 0, "missing sample_set header");
    if (out.marginals.size() != out.num_nodes)
      throw ParseError(meta_name, 0, "marginals do not cover num_nodes");
    if (marginals_digest(out.marginals) != *digest)
      throw ParseError(meta_name, 0, "marginals digest mismatch");
  }

  std::ifstream in(csv);
  const std::string name = csv.string();
  if (!in) throw ParseError(name, 0, "cannot open file");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != "sample_id,value,seeds")
    throw ParseError(name, 1, "expected header 'sample_id,value,seeds'");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw ParseError(name, line_no, "expected three columns");
    std::size_t id = 0;
    Sample s;
    const char* first = line.data();
    if (std::from_chars(first, first + c1, id).ec != std::errc() ||
        id != out.samples.size())
      throw ParseError(name, line_no, "sample ids must be 0,1,2,...");
    const auto [vptr, vec] =
        std::from_chars(first + c1 + 1, first + c2, s.value);
    if (vec != std::errc() || vptr != first + c2)
      throw ParseError(name, line_no, "bad value");
    std::size_t pos = c2 + 1;
    while (pos < line.size()) {
      auto end = line.find(';', pos);
      if (end == std::string::npos) end = line.size();
      NodeId v = 0;
      const auto [ptr, ec] = std::from_chars(first + pos, first + end, v);
      if (ec != std::errc() || ptr != first + end || v >= out.num_nodes)
        throw ParseError(name, line_no, "bad seed id");
      if (!s.seeds.empty() && v <= s.seeds.back())
        throw ParseError(name, line_no, "seed ids must be strictly increasing");
      s.seeds.push_back(v);
      pos = end + 1;
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace infsamp
