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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "infsamp/error.hpp"
#include "infsamp/parallel.hpp"
#include "infsamp/sampling.hpp"

using namespace infsamp;

namespace {

std::filesystem::path temp_csv(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("infsamp_samples_" + name + ".csv");
}

double mean_size(const SampleSet& set) {
  double total = 0;
  for (const auto& s : set.samples) total += static_cast<double>(s.seeds.size());
  return total / static_cast<double>(set.size());
}

}  // namespace

TEST_CASE("uniform marginals k/n with the bounded clamp") {
  const auto d = uniform_expected_k(100, 10);
  for (double p : d.marginals()) CHECK(p == doctest::Approx(0.1));
  const auto full = uniform_expected_k(10, 10);
  for (double p : full.marginals()) CHECK(p == doctest::Approx(1 - 1e-3));
  const auto sparse = uniform_expected_k(1000, 1);
  for (double p : sparse.marginals()) CHECK(p == doctest::Approx(0.001));
  CHECK_THROWS_AS(uniform_expected_k(10, 0), ValidationError);
  CHECK_THROWS_AS(uniform_expected_k(10, 11), ValidationError);
}

TEST_CASE("product distribution bounds") {
  CHECK(ProductDistribution::bound(10) == doctest::Approx(1e-3));
  CHECK(ProductDistribution::bound(1) == 0.5);
  CHECK_THROWS_AS(ProductDistribution({0.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(ProductDistribution({0.5, 1.0}), ValidationError);
  const auto c = ProductDistribution::clamped({0.0, 1.0, 0.3});
  CHECK(c.marginal(0) == doctest::Approx(1.0 / 27));
  CHECK(c.marginal(1) == doctest::Approx(1 - 1.0 / 27));
  CHECK(c.marginal(2) == 0.3);
}

TEST_CASE("near-zero marginals give near-empty sets") {
  const WeightedGraph g(100, {});
  const auto d = ProductDistribution::clamped(std::vector<double>(100, 0.0));
  const auto set = draw_samples(g, d, 100, 1);
  CHECK(mean_size(set) <= 1.0);
}

TEST_CASE("edgeless graphs have value |S|") {
  const WeightedGraph g(30, {});
  const auto set = draw_samples(g, uniform_expected_k(30, 5), 500, 2);
  for (const auto& s : set.samples) CHECK(s.value == static_cast<double>(s.seeds.size()));
}

TEST_CASE("sample sizes have mean k") {
  const WeightedGraph g(100, {});
  const auto set = draw_samples(g, uniform_expected_k(100, 10), 10000, 3);
  CHECK(std::abs(mean_size(set) - 10) <= 0.2);
}

TEST_CASE("per-node inclusion within 4 sigma [statistical]") {
  std::vector<double> marginals;
  for (int v = 0; v < 200; ++v) marginals.push_back(0.01 + 0.4 * (v % 10) / 10.0);
  const ProductDistribution d(marginals);
  // 200 nodes with p < 0.25 for some and more for others: both draw paths.
  const WeightedGraph g(200, {});
  const std::size_t m = 100000;
  const auto set = draw_samples(g, d, m, 4);
  std::vector<std::size_t> counts(200, 0);
  for (const auto& s : set.samples)
    for (NodeId v : s.seeds) ++counts[v];
  for (int v = 0; v < 200; ++v) {
    const double p = marginals[v];
    CHECK(std::abs(counts[v] - m * p) <= 4 * std::sqrt(m * p * (1 - p)));
  }

  // The geometric-skip path (equal small marginals, n > 64).
  const auto uniform = draw_samples(g, uniform_expected_k(200, 10), m, 5);
  std::fill(counts.begin(), counts.end(), 0);
  for (const auto& s : uniform.samples)
    for (NodeId v : s.seeds) ++counts[v];
  for (int v = 0; v < 200; ++v)
    CHECK(std::abs(counts[v] - m * 0.05) <= 4 * std::sqrt(m * 0.05 * 0.95));
}

TEST_CASE("sample values lie in [|S|, n]") {
  const CommunityLayout layout({{30, 0.5, 0.5}, {20, 0.6, 0.6}}, 0.05, 0.5);
  const auto set = draw_samples(layout, uniform_expected_k(50, 5), 5000, 6);
  CHECK(set.mode == SampleMode::kRedrawnGraph);
  for (const auto& s : set.samples) {
    CHECK(s.value >= static_cast<double>(s.seeds.size()));
    CHECK(s.value <= 50.0);
    CHECK(std::is_sorted(s.seeds.begin(), s.seeds.end()));
  }
}

TEST_CASE("redrawn values vary, forced fixed values do not") {
  const CommunityLayout layout({{10, 0.5, 0.5}});
  const auto redrawn = draw_samples(layout, uniform_expected_k(10, 2), 5000, 7);
  std::map<std::vector<NodeId>, std::set<double>> seen;
  for (const auto& s : redrawn.samples) seen[s.seeds].insert(s.value);
  bool varied = false;
  for (const auto& [seeds, values] : seen) varied |= values.size() > 1;
  CHECK(varied);

  const WeightedGraph g(10, {{0, 1, 1.0}, {1, 2, 0.0}, {3, 4, 1.0}, {5, 6, 1.0}});
  const auto fixed = draw_samples(g, uniform_expected_k(10, 2), 5000, 7);
  CHECK(fixed.mode == SampleMode::kFixedGraph);
  seen.clear();
  for (const auto& s : fixed.samples) seen[s.seeds].insert(s.value);
  for (const auto& [seeds, values] : seen) CHECK(values.size() == 1);
}

TEST_CASE("sampling is deterministic and thread independent") {
  const CommunityLayout layout({{40, 0.4, 0.5}, {30, 0.5, 0.5}});
  const auto d = uniform_expected_k(70, 5);
  set_num_threads(1);
  const auto a = draw_samples(layout, d, 3000, 8);
  set_num_threads(4);
  const auto b = draw_samples(layout, d, 3000, 8);
  set_num_threads(0);
  CHECK(a == b);
  CHECK_FALSE(a == draw_samples(layout, d, 3000, 9));
  CHECK_THROWS_AS(draw_samples(layout, d, 0, 8), ValidationError);
  CHECK_THROWS_AS(draw_samples(layout, uniform_expected_k(71, 5), 10, 8), ValidationError);
}

TEST_CASE("non-ubiquity of communities") {
  const WeightedGraph g(1000, {});
  const auto set = draw_samples(g, uniform_expected_k(1000, 10), 20000, 9);
  std::vector<NodeId> c(20);
  for (NodeId i = 0; i < 20; ++i) c[i] = 100 + i;
  CHECK(std::abs(empirical_nonubiquity(set, c) - std::pow(0.99, 20)) <= 0.03);
  CHECK_THROWS_AS(empirical_nonubiquity(set, std::vector<NodeId>{}), ValidationError);

  const WeightedGraph small(10, {});
  const auto dense = draw_samples(small, uniform_expected_k(10, 10), 1000, 10);
  std::vector<NodeId> all(10);
  for (NodeId i = 0; i < 10; ++i) all[i] = i;
  CHECK(empirical_nonubiquity(dense, all) <= 0.001);
  CHECK(empirical_nonubiquity(dense, std::vector<NodeId>{3}) <= 0.01);
}

TEST_CASE("sample sets round-trip through csv and sidecar") {
  const CommunityLayout layout({{12, 0.5, 0.5}, {8, 0.7, 0.7}});
  const auto set = draw_samples(layout, uniform_expected_k(20, 4), 300, 11);
  const auto path = temp_csv("roundtrip");
  save_samples(set, path);
  CHECK(std::filesystem::exists(sidecar_path(path)));
  const auto back = load_samples(path);
  CHECK(back == set);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "sample_id,value,seeds");

  // A tampered marginal no longer matches the digest.
  std::ifstream meta_in(sidecar_path(path));
  std::stringstream meta;
  meta << meta_in.rdbuf();
  meta_in.close();
  std::string text = meta.str();
  const auto pos = text.find("0.2");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 3, "0.3");
  std::ofstream(sidecar_path(path)) << text;
  CHECK_THROWS_AS(load_samples(path), ParseError);

  std::filesystem::remove(path);
  std::filesystem::remove(sidecar_path(path));
}

TEST_CASE("malformed sample csv") {
  const WeightedGraph g(5, {});
  const auto set = draw_samples(g, uniform_expected_k(5, 2), 5, 1);
  const auto path = temp_csv("malformed");
  save_samples(set, path);
  std::ofstream(path) << "sample_id,value,seeds\n0,1,0\n1,2,3;1\n";
  try {
    load_samples(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_samples(path), ParseError);
  std::filesystem::remove(sidecar_path(path));
}
