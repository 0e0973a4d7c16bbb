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
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "proxilink/error.hpp"
#include "proxilink/temporal.hpp"

using namespace proxilink;

namespace {

constexpr YearWindow kAll{1963, 2017};
constexpr YearWindow kTen{2007, 2017};
constexpr YearWindow kFive{2012, 2017};

std::vector<TemporalRecord> t0_records() {
  return {{0, 1, 2010, 2}, {0, 1, 2015, 1}, {1, 2, 2005, 3}, {0, 2, 2013, 1}};
}

TemporalGraph t0() { return TemporalGraph::build(3, t0_records()); }

TemporalGraph t0_augmented() {
  auto r = t0_records();
  r.push_back({1, 2, 2010, 2});
  return TemporalGraph::build(3, r);
}

NodeAttributes embeddings(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  NodeAttributes attrs;
  attrs.num_nodes = n;
  RealBlock block{n, d, {}};
  for (std::size_t i = 0; i < n * d; ++i) block.values.push_back(double(rng() % 5) * 0.25);
  attrs.real = block;
  return attrs;
}

}  // namespace

TEST(Temporal, WindowedWeights) {
  const auto tg = t0();
  EXPECT_EQ(windowed_weight_sum(tg, 0, 1, kAll), 3);
  EXPECT_EQ(windowed_weight_sum(tg, 1, 2, kTen), 0);
  EXPECT_EQ(windowed_weight_sum(tg, 0, 1, kFive), 1);
  EXPECT_EQ(windowed_weight_sum(tg, 1, 0, kAll), 3);
  EXPECT_THROW(windowed_weight_sum(tg, 0, 1, YearWindow{2017, 2007}), InputError);
}

TEST(Temporal, ActivityAndPreferentialAttachment) {
  const auto tg = t0();
  const WindowView ten(tg, kTen);
  EXPECT_EQ(activity(ten, 0), 4);
  EXPECT_EQ(activity(ten, 1), 3);
  EXPECT_EQ(preferential_attachment(ten, 0, 1), 12);
  EXPECT_EQ(preferential_attachment(ten, 1, 0), 12);
  const auto isolated = TemporalGraph::build(4, t0_records());
  const WindowView iv(isolated, kTen);
  EXPECT_EQ(preferential_attachment(iv, 0, 3), 0);
}

TEST(Temporal, WeightedIndicesOnT0) {
  const WindowView ten(t0(), kTen);
  const auto w = weighted_indices(ten, 0, 1);
  EXPECT_EQ(w.adamic_adar, 0.0);
  EXPECT_EQ(w.jaccard, 0.0);
  EXPECT_EQ(w.salton, 0.0);
  EXPECT_THROW(weighted_indices(ten, 1, 1), InputError);
}

TEST(Temporal, WeightedIndicesOnAugmentedT0) {
  const auto tg = t0_augmented();
  const WindowView ten(tg, kTen);
  const auto w = weighted_indices(ten, 0, 1);
  EXPECT_NEAR(w.adamic_adar, 1.0 / std::log(3.0), 1e-15);
  EXPECT_NEAR(w.adamic_adar, 0.9102, 5e-5);
  // Union {1,2} ∪ {0,2}: x=0 -> 0+3, x=1 -> 3+0, x=2 -> 1+2.
  EXPECT_NEAR(w.jaccard, 3.0 / 9.0, 1e-15);
  EXPECT_NEAR(w.salton, 3.0 / std::sqrt(4.0 * 5.0), 1e-15);
  EXPECT_EQ(common_collaborators(ten, 0, 1), 1u);
  EXPECT_EQ(windowed_common_collaborators(tg, 0, 1, kTen), 1u);
}

TEST(Temporal, CareerFlagsAndLabels) {
  const auto tg = t0();
  const auto f1 = career_span_flags(tg, 1);
  EXPECT_EQ(f1.oldest, 1);
  EXPECT_EQ(f1.newest, 1);
  const auto old = TemporalGraph::build(3, {{0, 1, 1984, 1}, {0, 2, 1985, 1}, {1, 2, 1970, 1}});
  EXPECT_EQ(career_span_flags(old, 0).oldest, 0);
  EXPECT_EQ(career_span_flags(old, 0).newest, 1);
  EXPECT_EQ(career_span_flags(old, 1).oldest, 0);
  EXPECT_EQ(career_span_flags(old, 1).newest, 0);
  const auto with_isolated = TemporalGraph::build(4, t0_records());
  EXPECT_THROW(career_span_flags(with_isolated, 3), ConfigError);

  std::vector<int> years;
  for (int y = 2007; y <= 2016; ++y) years.push_back(y);
  const auto labels = yearwise_labels(tg, 0, 1, years);
  ASSERT_EQ(labels.size(), 10u);
  for (std::size_t i = 0; i < years.size(); ++i) {
    EXPECT_EQ(labels[i], (years[i] == 2010 || years[i] == 2015) ? 1 : 0) << years[i];
  }
  EXPECT_EQ(yearwise_labels(tg, 1, 0, years), labels);
}

TEST(Temporal, BuildValidation) {
  EXPECT_THROW(TemporalGraph::build(2, {{0, 0, 2010, 1}}), InputError);
  EXPECT_THROW(TemporalGraph::build(2, {{0, 5, 2010, 1}}), InputError);
  EXPECT_THROW(TemporalGraph::build(2, {{0, 1, 2010, 0}}), InputError);
}

TEST(Temporal, UpToDropsLaterRecords) {
  const auto tg = t0().up_to(2012);
  EXPECT_EQ(tg.records().size(), 2u);
  EXPECT_EQ(windowed_weight_sum(tg, 0, 1, kAll), 2);
}

TEST(CollabFeaturizer, NamesAndLength) {
  std::mt19937_64 rng(1);
  const auto tg = t0();
  const CollabFeaturizer f(tg, embeddings(3, 4, rng), CollabConfig{});
  const auto names = f.names();
  ASSERT_EQ(names.size(), 28u);
  EXPECT_EQ(names.front(), "oldest_u");
  EXPECT_EQ(names[14], "graph_distance_10");
  EXPECT_EQ(names.back(), "la_2016");
  EXPECT_EQ(f.features(0, 1).size(), 28u);
}

TEST(CollabFeaturizer, MissingEmbeddings) {
  NodeAttributes attrs;
  attrs.num_nodes = 3;
  attrs.classes = ClassBlock{{0, 0, 0}, 1};
  EXPECT_THROW(CollabFeaturizer(t0(), attrs, CollabConfig{}), ConfigError);
}

TEST(CollabFeaturizer, NoHistoryStrictVersusBatch) {
  std::mt19937_64 rng(2);
  const auto tg = TemporalGraph::build(4, t0_records());
  const CollabFeaturizer f(tg, embeddings(4, 3, rng), CollabConfig{});
  EXPECT_THROW(f.features(0, 3), ConfigError);
  const std::vector<Edge> pairs = {{0, 3}};
  const auto rows = f.batch(pairs, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0][1], 1.0);
  EXPECT_EQ(rows[0][3], 1.0);
  for (std::size_t i = 4; i <= 13; ++i) EXPECT_EQ(rows[0][i], 0.0) << i;
  for (std::size_t i = 18; i < 28; ++i) EXPECT_EQ(rows[0][i], 0.0) << i;
}

TEST(CollabFeaturizer, IgnoresRecordsAfterTrainYear) {
  std::mt19937_64 rng(3);
  auto records = t0_records();
  const auto attrs = embeddings(3, 2, rng);
  const auto before = CollabFeaturizer(TemporalGraph::build(3, records), attrs, CollabConfig{}).features(1, 2);
  records.push_back({1, 2, 2018, 5});
  records.push_back({0, 1, 2019, 5});
  const auto after = CollabFeaturizer(TemporalGraph::build(3, records), attrs, CollabConfig{}).features(1, 2);
  EXPECT_EQ(before, after);
}

TEST(TemporalProperty, MatchesFilterThenStaticOracle) {
  std::mt19937_64 rng(77);
  std::vector<int> years;
  for (int y = 2007; y <= 2016; ++y) years.push_back(y);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    const auto records = oracle::random_records(n, rng, 1975, 2017);
    const auto tg = TemporalGraph::build(n, records);
    const WindowView all(tg, kAll), ten(tg, kTen), five(tg, kFive);
    const oracle::Windowed o_all(n, records, 1963, 2017), o_ten(n, records, 2007, 2017),
        o_five(n, records, 2012, 2017);
    const auto ten_adj = o_ten.adjacency();
    for (NodeId u = 0; u < n; ++u) {
      ASSERT_EQ(activity(ten, u), o_ten.activity(u));
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        ASSERT_EQ(all.weight(u, v), o_all.weight(u, v));
        ASSERT_EQ(ten.weight(u, v), o_ten.weight(u, v));
        ASSERT_EQ(five.weight(u, v), o_five.weight(u, v));
        ASSERT_LE(five.weight(u, v), ten.weight(u, v));
        ASSERT_LE(ten.weight(u, v), all.weight(u, v));
        ASSERT_EQ(common_collaborators(all, u, v), o_all.common(u, v));
        ASSERT_EQ(common_collaborators(ten, u, v), o_ten.common(u, v));
        ASSERT_EQ(common_collaborators(five, u, v), o_five.common(u, v));
        ASSERT_EQ(preferential_attachment(ten, u, v), o_ten.activity(u) * o_ten.activity(v));
        const auto w = weighted_indices(ten, u, v);
        ASSERT_EQ(w.adamic_adar, o_ten.w_adamic_adar(u, v));
        ASSERT_DOUBLE_EQ(w.jaccard, o_ten.w_jaccard(u, v));
        ASSERT_DOUBLE_EQ(w.salton, o_ten.w_salton(u, v));
        ASSERT_EQ(distance_excluding_direct_edge(ten.graph(), u, v),
                  oracle::masked_distance(ten_adj, u, v));
        const auto labels = yearwise_labels(tg, u, v, years);
        for (std::size_t i = 0; i < years.size(); ++i) {
          ASSERT_EQ(labels[i], oracle::Windowed(n, records, years[i], years[i]).weight(u, v) > 0 ? 1 : 0);
        }
      }
    }
  }
}

TEST(TemporalIo, ReadRecords) {
  const auto dir = std::filesystem::temp_directory_path() / "proxilink_temporal_io";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "t.tsv");
    out << "a\tb\t2010\t2\nb\tc\t2011\t1\n";
  }
  NodeIndex index;
  const auto records = read_temporal_edge_list(dir / "t.tsv", index);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(index.size(), 3u);
  EXPECT_EQ(records[1].u, 1u);
  EXPECT_EQ(records[1].v, 2u);
  EXPECT_EQ(records[0].weight, 2);
  {
    std::ofstream out(dir / "bad.tsv");
    out << "a\tb\t2010\n";
  }
  EXPECT_THROW(read_temporal_edge_list(dir / "bad.tsv", index), InputError);
}
