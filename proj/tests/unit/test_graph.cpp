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
#include <vector>

#include "infsamp/error.hpp"
#include "infsamp/graph.hpp"
#include "oracles.hpp"

using namespace infsamp;

namespace {

std::vector<std::size_t> intra_counts(const WeightedGraph& g,
                                      const CommunityLayout& layout) {
  std::vector<std::size_t> counts(layout.num_communities(), 0);
  for (const auto& e : g.edges())
    if (layout.community_of(e.u) == layout.community_of(e.v))
      ++counts[layout.community_of(e.u)];
  return counts;
}

}  // namespace

TEST_CASE("weighted graph rejects malformed edges") {
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 3, 0.5}}), ValidationError);
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 1, 0.5}}), ValidationError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1.5}}), ValidationError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, -0.1}}), ValidationError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 0.5}, {1, 0, 0.2}}), ValidationError);
  const WeightedGraph g(3, {{2, 0, 0.5}});
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 0);
}

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(CommunityLayout({{3, 1.5, 0.5}}), ValidationError);
  CHECK_THROWS_AS(CommunityLayout({{3, 0.5, 0.5}}, 2.0), ValidationError);
  CHECK_THROWS_AS(CommunityLayout({{2, 0.5, 0.5}}, {0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(CommunityLayout({{2, 0.5, 0.5}}, {0, 1}), ValidationError);
  const CommunityLayout layout({{2, 1, 1}, {1, 1, 1}}, {1, 0, 0});
  CHECK(layout.community_of(0) == 1);
  CHECK(layout.members(0).size() == 2);
  CHECK(layout.members(0)[0] == 1);
}

TEST_CASE("sbm with forced probabilities gives disjoint cliques") {
  const CommunityLayout layout({{3, 1.0, 0.7}, {2, 1.0, 0.4}});
  const WeightedGraph g = generate_sbm(layout, 1);
  CHECK(g.num_nodes() == 5);
  REQUIRE(g.num_edges() == 4);  // K3 plus K2
  for (const auto& e : g.edges()) {
    CHECK(layout.community_of(e.u) == layout.community_of(e.v));
    CHECK(e.q == (layout.community_of(e.u) == 0 ? 0.7 : 0.4));
  }
  CHECK(oracle::component_sizes(g) == std::vector<std::size_t>{3, 2});

  const CommunityLayout empty({{3, 0.0, 1.0}, {2, 0.0, 1.0}});
  CHECK(generate_sbm(empty, 1).num_edges() == 0);
}

TEST_CASE("sbm edge count has the binomial mean") {
  const CommunityLayout layout({{200, 0.1, 1.0}});
  const double pairs = 200.0 * 199 / 2;
  double sum = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s)
    sum += static_cast<double>(generate_sbm(layout, s).num_edges());
  const double mean = pairs * 0.1;  // 1990
  const double sd_of_mean = oracle::binomial_sd(pairs, 0.1) / std::sqrt(seeds);
  CHECK(std::abs(sum / seeds - mean) < 3 * sd_of_mean);
}

TEST_CASE("per-community edge counts stay within 4 sigma [statistical]") {
  const CommunityLayout layout({{60, 0.3, 1.0}, {40, 0.5, 1.0}, {30, 0.2, 1.0}});
  int within = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    const auto counts = intra_counts(generate_sbm(layout, 1000 + s), layout);
    bool ok = true;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const double size = static_cast<double>(layout.community(c).size);
      const double pairs = size * (size - 1) / 2;
      const double p = layout.community(c).q_sb;
      ok &= std::abs(counts[c] - pairs * p) <= 4 * oracle::binomial_sd(pairs, p);
    }
    within += ok;
  }
  CHECK(within >= 990);
}

TEST_CASE("inter-community edges follow the knobs") {
  // Zero cascade weight: inter edges are omitted.
  const CommunityLayout silent({{10, 1.0, 1.0}, {10, 1.0, 1.0}}, 1.0, 0.0);
  CHECK(generate_sbm(silent, 3).num_edges() == 2 * 45);
  const CommunityLayout linked({{10, 1.0, 1.0}, {10, 1.0, 1.0}}, 1.0, 0.25);
  const WeightedGraph g = generate_sbm(linked, 3);
  CHECK(g.num_edges() == 2 * 45 + 100);
  std::size_t inter = 0;
  for (const auto& e : g.edges())
    if (linked.community_of(e.u) != linked.community_of(e.v)) {
      ++inter;
      CHECK(e.q == 0.25);
    }
  CHECK(inter == 100);
}

TEST_CASE("generation is deterministic per seed") {
  const CommunityLayout layout({{50, 0.2, 0.5}, {30, 0.3, 0.5}}, 0.01, 0.1);
  CHECK(generate_sbm(layout, 9) == generate_sbm(layout, 9));
  CHECK_FALSE(generate_sbm(layout, 9) == generate_sbm(layout, 10));
  CHECK(generate_er(300, 0.05, 0.3, 4) == generate_er(300, 0.05, 0.3, 4));
  CHECK(generate_pa(300, 3, 0.3, 4) == generate_pa(300, 3, 0.3, 4));
}

TEST_CASE("bernoulli and geometric-skip sampling agree in distribution") {
  const CommunityLayout layout({{300, 0.02, 1.0}});
  std::vector<double> bern, skip;
  for (int s = 0; s < 500; ++s) {
    bern.push_back(static_cast<double>(
        generate_sbm(layout, s, EdgeSampling::kBernoulli).num_edges()));
    skip.push_back(static_cast<double>(
        generate_sbm(layout, 10000 + s, EdgeSampling::kGeometricSkip).num_edges()));
  }
  CHECK(oracle::ks_statistic(bern, skip) < oracle::ks_critical_001(500, 500));

  // Forced probabilities behave the same under both samplers.
  const CommunityLayout full({{20, 1.0, 1.0}});
  CHECK(generate_sbm(full, 1, EdgeSampling::kGeometricSkip).num_edges() == 190);
  const CommunityLayout none({{20, 0.0, 1.0}});
  CHECK(generate_sbm(none, 1, EdgeSampling::kGeometricSkip).num_edges() == 0);
}

TEST_CASE("erdos-renyi corner cases") {
  const WeightedGraph k4 = generate_er(4, 1.0, 0.5, 1);
  CHECK(k4.num_edges() == 6);
  CHECK(generate_er(1000, 0.0, 0.5, 1).num_edges() == 0);
  CHECK(generate_er(1, 0.5, 0.5, 1).num_edges() == 0);
  CHECK_THROWS_AS(generate_er(0, 0.5, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(generate_er(10, 1.5, 0.5, 1), ValidationError);
}

TEST_CASE("erdos-renyi connectivity threshold") {
  const std::size_t n = 500;
  const double ln = std::log(static_cast<double>(n));
  int connected_above = 0, disconnected_below = 0;
  for (int s = 0; s < 100; ++s) {
    connected_above += summarize_components(generate_er(n, 3 * ln / n, 1, s)).count == 1;
    disconnected_below +=
        summarize_components(generate_er(n, 0.5 * ln / n, 1, 500 + s)).count > 1;
  }
  CHECK(connected_above >= 95);
  CHECK(disconnected_below >= 95);
}

TEST_CASE("erdos-renyi giant component") {
  const std::size_t n = 2000;
  const double beta = oracle::giant_fraction(1.5);
  CHECK(beta == doctest::Approx(0.5828).epsilon(0.001));
  int giant = 0;
  double mean_fraction = 0;
  for (int s = 0; s < 100; ++s) {
    const auto g = generate_er(n, 1.5 / n, 1, 77 + s);
    const auto largest = summarize_components(g).largest;
    CHECK(largest == oracle::component_sizes(g).front());
    giant += largest >= 0.2 * n;
    if (s < 20) mean_fraction += static_cast<double>(largest) / n / 20;
  }
  CHECK(giant >= 95);
  CHECK(std::abs(mean_fraction - beta) <= 0.05);
}

TEST_CASE("preferential attachment edge counts") {
  const WeightedGraph two = generate_pa(2, 1, 0.5, 1);
  REQUIRE(two.num_edges() == 1);
  CHECK(two.edge(0).u == 0);
  CHECK(two.edge(0).v == 1);
  // (m+1)-clique on nodes 0..m, then m edges per later node.
  const WeightedGraph g = generate_pa(100, 2, 0.5, 1);
  CHECK(g.num_edges() == 3 + (100 - 3) * 2);
  CHECK(g.num_edges() == (100 - 2) * 2 + 1);
  for (NodeId v = 3; v < 100; ++v) {
    std::size_t older = 0;
    for (const auto& inc : g.neighbors(v)) older += inc.neighbor < v;
    CHECK(older == 2);
  }
  CHECK_THROWS_AS(generate_pa(3, 3, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(generate_pa(3, 0, 0.5, 1), ValidationError);
}

TEST_CASE("preferential attachment hubs beat erdos-renyi maximum degree") {
  const std::size_t n = 10000;
  int wins = 0;
  for (int s = 0; s < 20; ++s) {
    const WeightedGraph pa = generate_pa(n, 3, 1.0, s);
    const double p = static_cast<double>(pa.num_edges()) / (n * (n - 1.0) / 2);
    const WeightedGraph er =
        generate_er(n, p, 1.0, 100 + s, EdgeSampling::kGeometricSkip);
    wins += pa.max_degree() > er.max_degree();
  }
  CHECK(wins >= 18);
}

TEST_CASE("regime classification") {
  const double p50 = 3 * std::log(50.0) / 50 * 1.01;
  const double p100 = 1.0 / 100;
  const CommunityLayout layout(
      {{50, p50, 1.0}, {200, 0.5 / 200, 1.0}, {100, p100, 1.0}, {100, 0.02, 1.0}});
  const auto at03 = classify_regimes(layout, 0.3);
  CHECK(at03[0].regime == Regime::kDense);
  CHECK(at03[0].tight());
  CHECK(at03[1].regime == Regime::kLoose);
  CHECK(at03[1].epsilon == 0.3);
  const auto at01 = classify_regimes(layout, 0.1);
  CHECK(at01[2].regime == Regime::kBorderline);
  CHECK(at01[3].regime == Regime::kTight);
  CHECK_THROWS_AS(classify_regimes(layout, 0.0), ValidationError);
  CHECK_THROWS_AS(classify_regimes(layout, 1.0), ValidationError);
  CHECK(std::string(to_string(Regime::kLoose)) == "loose");
}

TEST_CASE("dense community split") {
  const Community c = dense_community(40);
  CHECK(c.q_sb == doctest::Approx(c.q_ic));
  CHECK(c.p() == doctest::Approx(3 * std::log(40.0) / 40));
  CHECK(dense_community(3).p() == doctest::Approx(1.0));
  CHECK_THROWS_AS(dense_community(1), ValidationError);
}
