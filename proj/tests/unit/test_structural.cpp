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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "proxilink/error.hpp"
#include "proxilink/structural.hpp"

using namespace proxilink;

namespace {

Graph g0() { return Graph::build(5, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}}); }

}  // namespace

TEST(Structural, G0Ratios) {
  const auto g = g0();
  EXPECT_DOUBLE_EQ(jaccard(g, 0, 1, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(jaccard(g, 0, 1, 3), 1.0);
  EXPECT_DOUBLE_EQ(salton(g, 0, 1, 2), 0.5);
  EXPECT_DOUBLE_EQ(salton(g, 0, 1, 3), 1.5);
  EXPECT_DOUBLE_EQ(sorensen(g, 0, 1, 2), 0.5);
  EXPECT_DOUBLE_EQ(sorensen(g, 0, 1, 3), 1.5);
  EXPECT_NEAR(adamic_adar(g, 0, 1), 1.0 / std::log(3.0), 1e-15);
  EXPECT_NEAR(adamic_adar(g, 0, 1), 0.9102, 5e-5);
  EXPECT_EQ(adamic_adar(g, 0, 4), 0.0);
}

TEST(Structural, G0Vector) {
  const auto s = structural_vector(g0(), 0, 1);
  const std::array<double, 10> expected = {2, 1, 3, 1.0 / std::log(3.0), 1.0 / 3.0, 0.5, 0.5, 1.0, 1.5, 1.5};
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(s.values[i], expected[i], 1e-12) << kStructuralNames[i];
}

TEST(Structural, IsolatedPair) {
  const auto g = Graph::build(5, std::vector<Edge>{});
  const auto s = structural_vector(g, 0, 1);
  EXPECT_EQ(s.values, (std::array<double, 10>{5, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Structural, Errors) {
  const auto g = g0();
  EXPECT_THROW(jaccard(g, 1, 1, 2), InputError);
  EXPECT_THROW(salton(g, 0, 1, 4), InputError);
  EXPECT_THROW(structural_vector(g, 3, 3), InputError);
  EXPECT_THROW(structural_vector(g, 0, 9), InputError);
}

TEST(Structural, CanonicalNames) {
  EXPECT_EQ(kStructuralNames[0], "graph_distance");
  EXPECT_EQ(kStructuralNames[3], "adamic_adar");
  EXPECT_EQ(kStructuralNames[9], "sorensen3");
}

TEST(StructuralProperty, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const double p = 0.1 + 0.4 * double(rng() % 1000) / 1000.0;
    const auto edges = oracle::random_edges(n, p, rng);
    const auto g = Graph::build(n, edges);
    const auto a = oracle::adjacency(n, edges);
    const auto a3 = oracle::power(a, 3);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const auto got = structural_vector(g, u, v);
        const auto want = oracle::structural(a, a3, u, v);
        for (std::size_t i = 0; i < 3; ++i) ASSERT_EQ(got.values[i], want[i]) << kStructuralNames[i];
        for (std::size_t i = 3; i < 10; ++i) {
          ASSERT_NEAR(got.values[i], want[i], 1e-12) << kStructuralNames[i];
        }
        const auto swapped = structural_vector(g, v, u);
        for (std::size_t i = 0; i < 10; ++i) ASSERT_NEAR(got.values[i], swapped.values[i], 1e-12);
        ASSERT_LE(got[StructuralIndex::kJaccard], 1.0);
        ASSERT_LE(got[StructuralIndex::kSorensen], 1.0);
        if (n > 2) {
          ASSERT_EQ(got[StructuralIndex::kPath2] > 0, got[StructuralIndex::kGraphDistance] == 2);
        }
      }
    }
  }
}

TEST(StructuralProperty, WithoutEdgeMatchesRebuiltGraph) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 14;
    const auto edges = oracle::random_edges(n, 0.35, rng);
    const auto g = Graph::build(n, edges);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const auto reduced = Graph::build(n, oracle::without(edges, u, v));
        const auto want = structural_vector(reduced, u, v);
        const auto got = structural_vector_without_edge(g, u, v);
        for (std::size_t i = 0; i < 10; ++i) {
          ASSERT_NEAR(got.values[i], want.values[i], 1e-12) << kStructuralNames[i];
        }
      }
    }
  }
}

TEST(StructuralBatch, OrderIndependentOfWorkers) {
  std::mt19937_64 rng(3);
  const std::size_t n = 120;
  const auto g = Graph::build(n, oracle::random_edges(n, 0.05, rng));
  std::vector<Edge> pairs;
  for (int i = 0; i < 500; ++i) {
    NodeId u = rng() % n, v = rng() % n;
    if (u != v) pairs.emplace_back(u, v);
  }
  const auto one = structural_batch(g, pairs, 1);
  for (std::size_t workers : {2u, 3u, 8u}) {
    const auto many = structural_batch(g, pairs, workers);
    ASSERT_EQ(many.size(), one.size());
    for (std::size_t i = 0; i < one.size(); ++i) ASSERT_EQ(many[i].values, one[i].values);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ASSERT_EQ(one[i].values, structural_vector(g, pairs[i].first, pairs[i].second).values);
  }
}

TEST(StructuralBatch, ErrorPropagatesFromWorker) {
  const auto g = g0();
  const std::vector<Edge> pairs = {{0, 1}, {2, 2}, {3, 4}};
  EXPECT_THROW(structural_batch(g, pairs, 3), InputError);
}
