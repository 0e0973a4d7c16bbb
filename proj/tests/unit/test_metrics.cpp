// Copyright 2026 The Proxilink Authors
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

#include <gtest/gtest.h>

#include <json.hpp>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "proxilink/error.hpp"
#include "proxilink/metrics.hpp"

using namespace proxilink;

namespace {

Graph g0() { return Graph::build(5, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}}); }

double brute_auc(const std::vector<double>& s, const std::vector<std::uint8_t>& y) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (y[i] == 1 && y[j] == 0) {
        den += 1;
        num += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
      }
  return num / den;
}

double brute_transitivity(std::size_t n, const std::vector<Edge>& edges) {
  const auto a = oracle::adjacency(n, edges);
  std::size_t linked = 0, total = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      bool shared = false;
      for (std::size_t z = 0; z < n; ++z) shared = shared || (a[u][z] && a[v][z]);
      if (!shared) continue;
      ++total;
      linked += a[u][v] ? 1 : 0;
    }
  return total == 0 ? -1.0 : double(linked) / double(total);
}

}  // namespace

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.9, 0.4, 0.6, 0.1}, std::vector<std::uint8_t>{1, 1, 0, 0}), 0.75);
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.5, 0.5}, std::vector<std::uint8_t>{1, 0}), 0.5);
  EXPECT_THROW(auc(std::vector<double>{0.1, 0.2}, std::vector<std::uint8_t>{1, 1}), MetricError);
  EXPECT_THROW(auc(std::vector<double>{0.1}, std::vector<std::uint8_t>{1, 0}), InputError);
}

TEST(Auc, MatchesPairCountWithTies) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<double> s(n);
    std::vector<std::uint8_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = double(rng() % 6);
      y[i] = rng() % 2;
    }
    y[0] = 1;
    y[1] = 0;
    const double a = auc(s, y);
    ASSERT_NEAR(a, brute_auc(s, y), 1e-12);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, 1.0);
  }
}

TEST(HitsAtK, Examples) {
  const std::vector<double> pos = {0.9, 0.5};
  const std::vector<double> neg = {0.7, 0.3, 0.1};
  EXPECT_DOUBLE_EQ(hits_at_k(pos, neg, 1), 0.5);
  EXPECT_DOUBLE_EQ(hits_at_k(pos, neg, 2), 1.0);
  EXPECT_DOUBLE_EQ(hits_at_k(std::vector<double>{0.7}, neg, 1), 0.0);
  EXPECT_THROW(hits_at_k(pos, neg, 4), InputError);
  EXPECT_THROW(hits_at_k(pos, neg, 0), InputError);
}

TEST(HitsAtK, MonotoneInK) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> pos(30), neg(60);
  for (auto& v : pos) v = u(rng);
  for (auto& v : neg) v = u(rng);
  double prev = 0;
  for (std::size_t k = 1; k <= neg.size(); ++k) {
    const double h = hits_at_k(pos, neg, k);
    ASSERT_GE(h, prev);
    prev = h;
  }
  EXPECT_DOUBLE_EQ(prev, 1.0);
}

TEST(Transitivity, Examples) {
  EXPECT_DOUBLE_EQ(transitivity_ratio(Graph::build(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}})), 1.0);
  EXPECT_DOUBLE_EQ(transitivity_ratio(Graph::build(3, std::vector<Edge>{{0, 1}, {1, 2}})), 0.0);
  EXPECT_DOUBLE_EQ(transitivity_ratio(g0()), 0.5);
  EXPECT_THROW(transitivity_ratio(Graph::build(4, std::vector<Edge>{{0, 1}, {2, 3}})), MetricError);
}

TEST(Transitivity, MatchesBruteForceAndIsLabelInvariant) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 12;
    const auto edges = oracle::random_edges(n, 0.35, rng);
    const double expected = brute_transitivity(n, edges);
    const auto g = Graph::build(n, edges);
    if (expected < 0) {
      EXPECT_THROW(transitivity_ratio(g), MetricError);
      continue;
    }
    ASSERT_NEAR(transitivity_ratio(g), expected, 1e-12);
    ASSERT_EQ(transitivity_ratio(g, 3), transitivity_ratio(g, 1));
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> relabeled;
    for (const auto& [a, b] : edges) relabeled.push_back({perm[a], perm[b]});
    ASSERT_NEAR(transitivity_ratio(Graph::build(n, relabeled)), expected, 1e-12);
  }
}

TEST(Homophily, Examples) {
  const auto g = g0();
  const std::vector<std::uint32_t> classes = {0, 0, 1, 1, 1};
  // node fractions: 1/2, 1/2, 1/3, 2/2, 1/1
  EXPECT_NEAR(node_homophily(g, classes), (0.5 + 0.5 + 1.0 / 3 + 1 + 1) / 5, 1e-12);
  EXPECT_NEAR(edge_homophily(g, classes), 3.0 / 5, 1e-12);
}

TEST(Homophily, IsolatedNodes) {
  const auto g = Graph::build(4, std::vector<Edge>{{0, 1}, {1, 2}});
  const std::vector<std::uint32_t> classes = {0, 0, 1, 1};
  EXPECT_NEAR(node_homophily(g, classes), (1 + 0.5 + 0) / 3.0, 1e-12);
  EXPECT_NEAR(node_homophily(g, classes, IsolatedNodes::kCountAsZero), 1.5 / 4.0, 1e-12);
  EXPECT_THROW(node_homophily(g, std::vector<std::uint32_t>{0, 1}), InputError);
  EXPECT_THROW(edge_homophily(Graph::build(2, std::vector<Edge>{}), std::vector<std::uint32_t>{0, 1}),
               MetricError);
}

TEST(Homophily, RangeProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng() % 12;
    auto edges = oracle::random_edges(n, 0.4, rng);
    if (edges.empty()) edges.push_back({0, 1});
    const auto g = Graph::build(n, edges);
    std::vector<std::uint32_t> c(n);
    for (auto& v : c) v = rng() % 3;
    const double hn = node_homophily(g, c), he = edge_homophily(g, c);
    ASSERT_GE(hn, 0.0);
    ASSERT_LE(hn, 1.0);
    ASSERT_GE(he, 0.0);
    ASSERT_LE(he, 1.0);
    std::fill(c.begin(), c.end(), 2u);
    ASSERT_DOUBLE_EQ(node_homophily(g, c), 1.0);
    ASSERT_DOUBLE_EQ(edge_homophily(g, c), 1.0);
  }
}

TEST(Aggregate, MeanAndPopulationStd) {
  const auto r = aggregate(std::vector<double>{0.8, 1.0});
  EXPECT_NEAR(r.mean, 0.9, 1e-12);
  EXPECT_NEAR(r.std, 0.1, 1e-12);
  EXPECT_EQ(aggregate(std::vector<double>{0.5}).std, 0.0);
  EXPECT_THROW(aggregate(std::vector<double>{}), InputError);
}

TEST(MetricSpec, Parse) {
  EXPECT_EQ(MetricSpec::parse("auc").name, "auc");
  const auto h = MetricSpec::parse("hits@50");
  EXPECT_EQ(h.name, "hits");
  EXPECT_EQ(h.k, 50u);
  EXPECT_EQ(h.label(), "hits@50");
  EXPECT_THROW(MetricSpec::parse("hits@0"), ConfigError);
  EXPECT_THROW(MetricSpec::parse("hits@x"), ConfigError);
  EXPECT_THROW(MetricSpec::parse("mrr"), ConfigError);
}

TEST(EvalReport, Json) {
  auto r = aggregate(std::vector<double>{0.8, 1.0});
  r.metric = "hits";
  r.k = 20;
  r.seeds = {0, 1};
  r.dataset = "toy";
  r.preset = "hits20";
  r.run_id = "abc";
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["metric"], "hits");
  EXPECT_EQ(j["k"], 20);
  EXPECT_EQ(j["seeds"].size(), 2u);
  EXPECT_NEAR(j["mean"].get<double>(), 0.9, 1e-12);
  EXPECT_EQ(j["dataset"], "toy");
}
