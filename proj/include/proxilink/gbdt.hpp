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
#include <string_view>
#include <utility>
#include <vector>

namespace proxilink {

enum class Objective {
  kLogistic,      // binary log loss
  kPairwiseRank,  // RankNet-style loss on sampled (positive, negative) pairs
};

std::string_view objective_name(Objective o);
Objective parse_objective(std::string_view name);

struct Hyperparams {
  int max_depth = 5;
  int n_estimators = 1000;
  double learning_rate = 0.05;
  double lambda = 10.0;  // L2 regularization on leaf weights
  double subsample = 1.0;
  double colsample_bytree = 1.0;
  double min_child_weight = 1.0;
  double gamma = 0.0;  // minimum loss reduction to split
  Objective objective = Objective::kLogistic;
  std::uint64_t seed = 0;
  /// Split-finding threads; results are reduced in feature order so the
  /// model does not depend on this value.
  std::size_t workers = 1;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Named settings: "auc", "hits20", "hits50", "hits100".
Hyperparams preset(std::string_view name);
std::vector<std::string> preset_names();

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output, already scaled by the learning rate
  double gain = 0.0;
  double cover = 0.0;  // hessian sum

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary regression tree; rows with x[feature] <= threshold go left.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> row) const;
  int depth() const;
  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;
};

class GbdtModel {
 public:
  GbdtModel() = default;

  std::size_t num_features() const { return feature_names_.size(); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }
  const Hyperparams& hyperparams() const { return hp_; }
  double base_score() const { return base_score_; }

  double predict_margin(std::span<const double> row) const;
  /// Logistic of the margin for each row of a row-major matrix.
  std::vector<double> predict(std::span<const double> values, std::size_t cols) const;

  /// Normalized total split gain per feature; all zeros when no tree splits.
  std::vector<double> feature_importance() const;

  std::string to_json() const;
  static GbdtModel from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static GbdtModel load(const std::filesystem::path& path);

 private:
  friend GbdtModel train_gbdt(std::span<const double>, std::size_t,
                              std::span<const std::uint8_t>, std::vector<std::string>,
                              const Hyperparams&);

  std::vector<RegressionTree> trees_;
  std::vector<std::string> feature_names_;
  Hyperparams hp_;
  double base_score_ = 0.0;  // prior log-odds
};

/// Second-order gradient boosting with exact greedy splits. `values` is
/// row-major with `cols` columns. Throws InputError on non-finite features
/// or shape mismatch, TrainingError when a single class is present.
GbdtModel train_gbdt(std::span<const double> values, std::size_t cols,
                     std::span<const std::uint8_t> labels, std::vector<std::string> feature_names,
                     const Hyperparams& hp);

/// First and second derivative of the logistic loss w.r.t. the margin.
std::pair<double, double> logistic_grad_hess(double margin, double label);

/// (name, weight) pairs sorted by descending weight, ties in feature order.
std::vector<std::pair<std::string, double>> importance_report(const GbdtModel& model);
void write_importance_csv(const std::filesystem::path& path, const GbdtModel& model);

}  // namespace proxilink
