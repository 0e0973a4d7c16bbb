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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxilink/domain.hpp"
#include "proxilink/graph.hpp"
#include "proxilink/structural.hpp"
#include "proxilink/temporal.hpp"

namespace proxilink {

struct SplitRatios {
  double train = 0.85;
  double valid = 0.05;
  double test = 0.10;

  /// Each ratio > 0 and the three sum to 1 (within 1e-9).
  void validate() const;
};

struct DatasetSplit {
  std::vector<Edge> train_pos, valid_pos, test_pos;
  std::vector<Edge> train_neg, valid_neg, test_neg;
  std::uint64_t seed = 0;
  SplitRatios ratios;
};

/// Split sizes for n items by largest-remainder rounding; ties in the
/// fractional part go to the earlier split.
std::array<std::size_t, 3> largest_remainder_sizes(std::size_t n, const SplitRatios& ratios);

/// Seeded uniform permutation of `edges`, cut into train/valid/test.
/// Negatives are left empty. Throws InputError for fewer than 3 edges.
DatasetSplit split_edges(std::span<const Edge> edges, const SplitRatios& ratios,
                         std::uint64_t seed);

/// `count` distinct unordered non-edge pairs (u < v) avoiding `forbidden`,
/// drawn uniformly under `seed`. Throws InputError naming the achievable
/// maximum when not enough non-edges exist.
std::vector<Edge> sample_negatives(std::size_t num_nodes, std::span<const Edge> forbidden,
                                   std::size_t count, std::uint64_t seed);

enum class NegativeScope {
  kAllPositives,  // exclude every positive of every split
  kSplitOnly,     // exclude only the split's own positives
};

/// Fills the three negative sets with |neg| = |pos| per split.
void fill_negatives(DatasetSplit& split, std::size_t num_nodes, NegativeScope scope);

/// Graph over train positives only.
Graph observed_graph(std::size_t num_nodes, const DatasetSplit& split);

/// Dense labeled pair-feature matrix.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<Edge> pairs;
  std::vector<std::uint8_t> labels;
  std::vector<double> values;  // row-major, rows() x cols()

  std::size_t rows() const { return pairs.size(); }
  std::size_t cols() const { return names.size(); }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }
};

/// "u,v,label,<names...>" with shortest round-trip number formatting.
void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

enum class FeatureGroups {
  kAll,
  kStructural,  // structural columns only
  kDomain,      // domain columns only
};

std::string_view feature_groups_name(FeatureGroups g);
FeatureGroups parse_feature_groups(std::string_view name);

struct FeatureOptions {
  Profile profile = Profile::kBinary;
  /// Structural values of a pair that is itself an observed edge (train
  /// positives) are computed as if that edge were absent.
  bool mask_target_edge = true;
  FeatureGroups groups = FeatureGroups::kAll;
  DomainOptions domain;
  CollabConfig collab;
};

/// Structural columns used by a profile (PPA keeps a reduced set; collab
/// uses none from the static graph).
std::vector<StructuralIndex> structural_columns(Profile profile);

/// Full column header for a schema: structural columns followed by domain
/// columns.
std::vector<std::string> feature_names(const NodeAttributes& attrs, const FeatureOptions& options);

/// Featurizes pairs on a fixed observed graph for the static profiles.
class PairFeaturizer {
 public:
  PairFeaturizer(const Graph& observed, const NodeAttributes& attrs, FeatureOptions options);

  const std::vector<std::string>& names() const { return names_; }

  /// Rows for `pairs` in order, labeled `label`, appended to `out`.
  void append(std::span<const Edge> pairs, std::uint8_t label, std::size_t workers,
              FeatureMatrix& out) const;

 private:
  const Graph& graph_;
  const NodeAttributes& attrs_;
  FeatureOptions options_;
  std::vector<StructuralIndex> structural_;
  std::vector<std::string> names_;
};

struct AssembledFeatures {
  FeatureMatrix train, valid, test;
};

struct AssembleOptions {
  /// Add validation positives to the graph used for test rows.
  bool valid_edges_in_test_graph = false;
  std::size_t workers = 1;
};

/// Rows for every split (positives first, then negatives), structural
/// values on the train-positive graph. Throws InputError if a valid or test
/// positive is an edge of the observed graph.
AssembledFeatures assemble(std::size_t num_nodes, const NodeAttributes& attrs,
                           const DatasetSplit& split, const FeatureOptions& options,
                           const AssembleOptions& assemble_options = {});

/// Positives by year: train = pairs with records up to train_last_year,
/// valid = pairs of valid_year, test = pairs of test_year.
DatasetSplit temporal_split(const TemporalGraph& tg, const CollabConfig& config);

AssembledFeatures assemble_collab(const TemporalGraph& tg, const NodeAttributes& attrs,
                                  const DatasetSplit& split, const CollabConfig& config,
                                  std::size_t workers = 1);

}  // namespace proxilink
