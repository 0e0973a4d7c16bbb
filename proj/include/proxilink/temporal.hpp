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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "proxilink/domain.hpp"
#include "proxilink/graph.hpp"

namespace proxilink {

struct TemporalRecord {
  NodeId u = 0;
  NodeId v = 0;
  int year = 0;
  std::int64_t weight = 1;
};

/// Inclusive year range [first, last].
struct YearWindow {
  int first = 0;
  int last = 0;

  bool contains(int year) const { return first <= year && year <= last; }
  /// Throws InputError when first > last.
  void validate() const;
};

/// Year-annotated weighted multigraph: one record per (pair, year).
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Throws InputError on self-loops, out-of-range ids or weights <= 0.
  static TemporalGraph build(std::size_t num_nodes, std::vector<TemporalRecord> records);

  std::size_t num_nodes() const { return num_nodes_; }
  std::span<const TemporalRecord> records() const { return records_; }

  /// Records of the unordered pair {u,v}, ascending by year.
  std::span<const TemporalRecord> pair_records(NodeId u, NodeId v) const;
  /// Indices into records() touching u.
  std::span<const std::size_t> node_records(NodeId u) const;

  /// Copy restricted to records with year <= last_year.
  TemporalGraph up_to(int last_year) const;

 private:
  static std::uint64_t key(NodeId u, NodeId v);

  std::size_t num_nodes_ = 0;
  std::vector<TemporalRecord> records_;  // sorted by (lo, hi, year)
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> pair_range_;
  std::vector<std::vector<std::size_t>> by_node_;
};

/// Pairs collaborating inside one window, with their summed weights.
class WindowView {
 public:
  WindowView(const TemporalGraph& tg, YearWindow window);

  const YearWindow& window() const { return window_; }
  const Graph& graph() const { return graph_; }
  std::int64_t weight(NodeId u, NodeId v) const;
  /// Σ over neighbors x of weight(u, x).
  std::int64_t activity(NodeId u) const { return activity_.at(u); }

 private:
  YearWindow window_;
  Graph graph_;
  std::unordered_map<std::uint64_t, std::int64_t> weights_;
  std::vector<std::int64_t> activity_;
};

/// Σ of the pair's record weights inside the window.
std::int64_t windowed_weight_sum(const TemporalGraph& tg, NodeId u, NodeId v, YearWindow window);

std::int64_t activity(const WindowView& view, NodeId u);
std::int64_t preferential_attachment(const WindowView& view, NodeId u, NodeId v);

struct WeightedIndices {
  double adamic_adar = 0;
  double jaccard = 0;
  double salton = 0;
};

/// Weighted Adamic-Adar, Jaccard and Salton on the window graph. Common
/// neighbors with activity <= 1 are skipped in Adamic-Adar.
WeightedIndices weighted_indices(const WindowView& view, NodeId u, NodeId v);

std::size_t common_collaborators(const WindowView& view, NodeId u, NodeId v);
std::size_t windowed_common_collaborators(const TemporalGraph& tg, NodeId u, NodeId v,
                                          YearWindow window);

struct CareerFlags {
  int oldest = 1;  // 0 when the earliest record is before the cutoff year
  int newest = 1;  // 0 when the latest record is before the cutoff year
};

/// Throws ConfigError when u has no records.
CareerFlags career_span_flags(const TemporalGraph& tg, NodeId u, int cutoff_year = 1985);

std::vector<std::uint8_t> yearwise_labels(const TemporalGraph& tg, NodeId u, NodeId v,
                                          std::span<const int> years);

struct CollabConfig {
  YearWindow all_years{1963, 2017};
  YearWindow ten_years{2007, 2017};
  YearWindow five_years{2012, 2017};
  int career_cutoff = 1985;
  int label_first_year = 2007;
  int label_last_year = 2016;
  int train_last_year = 2017;
  int valid_year = 2018;
  int test_year = 2019;
  CommonEmbeddingMode embedding_mode = CommonEmbeddingMode::kEqualCoordinates;

  std::vector<int> label_years() const;
};

/// Builds the windowed views once and featurizes pairs into the 28-entry
/// collaboration vector (with the default ten label years).
class CollabFeaturizer {
 public:
  /// `tg` is restricted to records up to config.train_last_year. Throws
  /// ConfigError when attrs carries no real-valued embedding block.
  CollabFeaturizer(const TemporalGraph& tg, const NodeAttributes& attrs, CollabConfig config);

  std::vector<std::string> names() const;

  /// Direct call: nodes without history raise ConfigError.
  std::vector<double> features(NodeId u, NodeId v) const;

  /// Batch call: nodes without history get career flags (1,1); the number
  /// of such nodes is logged once.
  std::vector<std::vector<double>> batch(std::span<const Edge> pairs, std::size_t workers) const;

 private:
  std::vector<double> features_impl(NodeId u, NodeId v, bool lenient) const;

  TemporalGraph tg_;
  RealBlock embeddings_;
  CollabConfig config_;
  WindowView all_;
  WindowView ten_;
  WindowView five_;
};

/// Reads "u<TAB>v<TAB>year<TAB>weight" lines, interning external ids.
std::vector<TemporalRecord> read_temporal_edge_list(const std::filesystem::path& path,
                                                    NodeIndex& index);

}  // namespace proxilink
