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
#include <optional>
#include <string>
#include <vector>

#include "proxilink/dataset.hpp"
#include "proxilink/domain.hpp"
#include "proxilink/gbdt.hpp"
#include "proxilink/graph.hpp"
#include "proxilink/metrics.hpp"
#include "proxilink/temporal.hpp"

namespace proxilink {

struct DatasetPaths {
  std::string name = "dataset";
  std::filesystem::path edges;
  std::filesystem::path binary_features;
  std::filesystem::path real_features;
  std::filesystem::path classes;
  bool temporal = false;
  std::uint32_t num_classes = 0;  // 0 infers from the labels
};

enum class ClassifierKind { kGbdt, kLogistic };

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::kGbdt;
  std::string preset = "auc";
  Hyperparams hyperparams = proxilink::preset("auc");  // preset + overrides, resolved
  std::vector<double> learning_rate_sweep;  // empty: train once at hyperparams.learning_rate
  double logistic_l2 = 1.0;
};

enum class TransitivityGraph { kFull, kTrain };

struct RunConfig {
  DatasetPaths dataset;
  FeatureOptions features;
  SplitRatios ratios;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  ClassifierConfig classifier;
  std::vector<MetricSpec> metrics = {MetricSpec{"auc", 0}};
  std::filesystem::path output_dir = "out";
  std::size_t workers = 1;
  NegativeScope negative_scope = NegativeScope::kAllPositives;
  bool valid_edges_in_test_graph = false;
  TransitivityGraph transitivity_graph = TransitivityGraph::kFull;
  IsolatedNodes isolated_nodes = IsolatedNodes::kExclude;

  /// Parses a JSON config; relative paths resolve against `base_dir`.
  static RunConfig from_json(const std::string& text, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Fully resolved config, loadable by from_json. Omits output_dir and
  /// workers when `portable` so the result identifies the experiment only.
  std::string to_json(bool portable = false) const;

  /// Checks referenced files exist, seeds are non-empty, ratios are valid
  /// and the profile's blocks are configured. Throws ConfigError.
  void validate() const;

  /// Stable hex digest of the portable config.
  std::string run_id() const;
};

/// Everything loaded from the dataset files.
struct Dataset {
  std::string name;
  NodeIndex index;
  Graph graph;  // full static graph (all temporal records collapsed)
  NodeAttributes attrs;
  std::optional<TemporalGraph> temporal;
};

Dataset load_dataset(const RunConfig& config);

struct Diagnostics {
  std::string dataset;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t classes = 0;
  std::string transitivity_graph;
  double transitivity = 0.0;
  std::optional<double> node_homophily;
  std::optional<double> edge_homophily;

  std::string to_json() const;
  std::string to_table() const;
};

Diagnostics analyze(const Dataset& data, const RunConfig& config);

/// Stage entry points. Each reads the previous stage's artifacts under
/// config.output_dir and writes its own; errors are rethrown with the stage
/// name prefixed and the original error type preserved.
Diagnostics run_analyze(const RunConfig& config);
void run_split(const RunConfig& config);
void run_featurize(const RunConfig& config);
void run_train(const RunConfig& config);
std::vector<EvalReport> run_eval(const RunConfig& config);

/// All stages for every seed. On failure the seed's partial artifacts move
/// under output_dir/failed/ before the error propagates.
std::vector<EvalReport> run_pipeline(const RunConfig& config);

std::filesystem::path seed_dir(const RunConfig& config, std::uint64_t seed);

}  // namespace proxilink
