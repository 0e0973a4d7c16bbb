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

#include "proxilink/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "proxilink/error.hpp"
#include "proxilink/parallel.hpp"
#include "rng.hpp"
#include "text_io.hpp"

namespace proxilink {

namespace {

constexpr double kMinSplitGain = 1e-6;
constexpr double kMinHessian = 1e-16;
constexpr std::uint64_t kRowSampleStream = 11;
constexpr std::uint64_t kColSampleStream = 12;
constexpr std::uint64_t kPairStream = 13;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::string_view objective_name(Objective o) {
  return o == Objective::kLogistic ? "binary:logistic" : "rank:pairwise";
}

Objective parse_objective(std::string_view name) {
  if (name == "binary:logistic" || name == "logistic") return Objective::kLogistic;
  if (name == "rank:pairwise" || name == "pairwise_rank" || name == "pairwise") {
    return Objective::kPairwiseRank;
  }
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

void Hyperparams::validate() const {
  if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (n_estimators < 0) throw ConfigError("n_estimators must be >= 0");
  if (!(learning_rate > 0 && learning_rate <= 1)) {
    throw ConfigError("learning_rate must be in (0, 1]");
  }
  if (!(lambda >= 0)) throw ConfigError("lambda must be >= 0");
  if (!(subsample > 0 && subsample <= 1)) throw ConfigError("subsample must be in (0, 1]");
  if (!(colsample_bytree > 0 && colsample_bytree <= 1)) {
    throw ConfigError("colsample_bytree must be in (0, 1]");
  }
  if (!(min_child_weight >= 0)) throw ConfigError("min_child_weight must be >= 0");
  if (!(gamma >= 0)) throw ConfigError("gamma must be >= 0");
}

Hyperparams preset(std::string_view name) {
  Hyperparams hp;  // auc settings are the defaults
  if (name == "auc") return hp;
  if (name == "hits20") {
    hp.learning_rate = 0.1;
    hp.lambda = 1.0;
    hp.colsample_bytree = 1.0;
    return hp;
  }
  if (name == "hits50") {
    hp.max_depth = 11;
    hp.learning_rate = 0.5;
    hp.lambda = 1.0;
    return hp;
  }
  if (name == "hits100") {
    hp.learning_rate = 0.3;
    hp.subsample = 0.5;
    hp.colsample_bytree = 1.0;
    hp.lambda = 1.0;
    return hp;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"auc", "hits20", "hits50", "hits100"}; }

double RegressionTree::predict(std::span<const double> row) const {
  if (nodes.empty()) return 0.0;
  int id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& n = nodes[id];
    id = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[id].value;
}

int RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> depth(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, depth[i]);
    if (!nodes[i].is_leaf()) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  return best;
}

double GbdtModel::predict_margin(std::span<const double> row) const {
  if (row.size() != num_features()) {
    throw InputError("model expects " + std::to_string(num_features()) + " features, got " +
                     std::to_string(row.size()));
  }
  double margin = base_score_;
  for (const auto& tree : trees_) margin += tree.predict(row);
  return margin;
}

std::vector<double> GbdtModel::predict(std::span<const double> values, std::size_t cols) const {
  if (cols != num_features()) {
    throw InputError("model expects " + std::to_string(num_features()) + " feature columns, got " +
                     std::to_string(cols));
  }
  if (cols == 0 ? !values.empty() : values.size() % cols != 0) {
    throw InputError("feature matrix size is not a multiple of the column count");
  }
  const std::size_t rows = cols == 0 ? 0 : values.size() / cols;
  std::vector<double> out(rows);
  parallel_for_chunks(rows, hp_.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      out[r] = sigmoid(predict_margin(values.subspan(r * cols, cols)));
    }
  });
  return out;
}

std::vector<double> GbdtModel::feature_importance() const {
  std::vector<double> gain(num_features(), 0.0);
  for (const auto& tree : trees_) {
    for (const auto& n : tree.nodes) {
      if (!n.is_leaf()) gain[static_cast<std::size_t>(n.feature)] += n.gain;
    }
  }
  const double total = std::accumulate(gain.begin(), gain.end(), 0.0);
  if (total > 0) {
    for (auto& g : gain) g /= total;
  }
  return gain;
}

std::pair<double, double> logistic_grad_hess(double margin, double label) {
  const double p = sigmoid(margin);
  return {p - label, std::max(p * (1.0 - p), kMinHessian)};
}

namespace {

struct GradPair {
  double g = 0;
  double h = 0;
};

struct SplitCandidate {
  double gain = 0;
  int feature = -1;
  double threshold = 0;
};

double score(double g, double h, double lambda) { return g * g / (h + lambda); }

// Level-wise exact greedy tree builder over presorted feature columns.
class TreeBuilder {
 public:
  TreeBuilder(std::span<const double> values, std::size_t rows, std::size_t cols,
              const std::vector<std::vector<std::uint32_t>>& sorted, const Hyperparams& hp)
      : values_(values), rows_(rows), cols_(cols), sorted_(sorted), hp_(hp) {}

  RegressionTree build(std::span<const GradPair> grad, std::vector<int> row_node,
                       std::span<const std::size_t> features) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    std::vector<int> level = {0};
    for (int depth = 0; depth <= hp_.max_depth && !level.empty(); ++depth) {
      // Node totals, summed in row order.
      std::vector<GradPair> totals(tree.nodes.size());
      for (std::size_t r = 0; r < rows_; ++r) {
        if (row_node[r] >= 0) {
          totals[row_node[r]].g += grad[r].g;
          totals[row_node[r]].h += grad[r].h;
        }
      }
      for (int id : level) tree.nodes[id].cover = totals[id].h;
      if (depth == hp_.max_depth) {
        for (int id : level) make_leaf(tree.nodes[id], totals[id]);
        break;
      }
      const auto best = find_splits(grad, row_node, features, totals, tree.nodes.size());
      std::vector<int> next;
      std::vector<int> remap(tree.nodes.size(), -1);
      for (int id : level) {
        const auto& cand = best[id];
        if (cand.feature < 0 || cand.gain <= kMinSplitGain) {
          make_leaf(tree.nodes[id], totals[id]);
          continue;
        }
        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        auto& node = tree.nodes[id];
        node.feature = cand.feature;
        node.threshold = cand.threshold;
        node.gain = cand.gain;
        node.left = left;
        node.right = left + 1;
        remap[id] = id;
        next.push_back(left);
        next.push_back(left + 1);
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        const int id = row_node[r];
        if (id < 0) continue;
        const auto& node = tree.nodes[id];
        if (remap[id] < 0) {
          row_node[r] = -1;  // settled in a leaf
          continue;
        }
        const double x = values_[r * cols_ + static_cast<std::size_t>(node.feature)];
        row_node[r] = x <= node.threshold ? node.left : node.right;
      }
      level = std::move(next);
    }
    return tree;
  }

 private:
  void make_leaf(TreeNode& node, const GradPair& total) const {
    node.feature = -1;
    node.value = -total.g / (total.h + hp_.lambda) * hp_.learning_rate;
  }

  std::vector<SplitCandidate> find_splits(std::span<const GradPair> grad,
                                          const std::vector<int>& row_node,
                                          std::span<const std::size_t> features,
                                          const std::vector<GradPair>& totals,
                                          std::size_t num_nodes) const {
    std::vector<std::vector<SplitCandidate>> per_feature(features.size());
    parallel_for_chunks(features.size(), hp_.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        per_feature[k] = scan_feature(grad, row_node, features[k], totals, num_nodes);
      }
    });
    // Reduce in ascending feature order; strict comparison keeps the lowest
    // feature index on ties.
    std::vector<SplitCandidate> best(num_nodes);
    for (const auto& cands : per_feature) {
      for (std::size_t id = 0; id < num_nodes; ++id) {
        if (cands[id].feature >= 0 && cands[id].gain > best[id].gain) best[id] = cands[id];
      }
    }
    return best;
  }

  std::vector<SplitCandidate> scan_feature(std::span<const GradPair> grad,
                                           const std::vector<int>& row_node, std::size_t feature,
                                           const std::vector<GradPair>& totals,
                                           std::size_t num_nodes) const {
    std::vector<SplitCandidate> best(num_nodes);
    std::vector<GradPair> left(num_nodes);
    std::vector<double> last(num_nodes, 0.0);
    std::vector<bool> started(num_nodes, false);
    for (std::uint32_t r : sorted_[feature]) {
      const int id = row_node[r];
      if (id < 0) continue;
      const double x = values_[r * cols_ + feature];
      if (started[id] && x > last[id]) {
        const auto& l = left[id];
        const auto& t = totals[id];
        const double hr = t.h - l.h;
        if (l.h >= hp_.min_child_weight && hr >= hp_.min_child_weight) {
          const double gain = 0.5 * (score(l.g, l.h, hp_.lambda) +
                                     score(t.g - l.g, hr, hp_.lambda) -
                                     score(t.g, t.h, hp_.lambda)) -
                              hp_.gamma;
          if (gain > best[id].gain) {
            double threshold = 0.5 * (last[id] + x);
            if (!(threshold < x)) threshold = last[id];
            best[id] = {gain, static_cast<int>(feature), threshold};
          }
        }
      }
      left[id].g += grad[r].g;
      left[id].h += grad[r].h;
      last[id] = x;
      started[id] = true;
    }
    return best;
  }

  std::span<const double> values_;
  std::size_t rows_;
  std::size_t cols_;
  const std::vector<std::vector<std::uint32_t>>& sorted_;
  const Hyperparams& hp_;
};

void pairwise_gradients(std::span<const double> margin, std::span<const std::uint8_t> labels,
                        std::span<const std::uint32_t> positives,
                        std::span<const std::uint32_t> negatives, std::mt19937_64& rng,
                        std::vector<GradPair>& grad) {
  std::fill(grad.begin(), grad.end(), GradPair{});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& pool = labels[i] ? negatives : positives;
    const auto j = pool[detail::bounded(rng, pool.size())];
    const std::size_t pos = labels[i] ? i : j;
    const std::size_t neg = labels[i] ? j : i;
    const double p = sigmoid(margin[pos] - margin[neg]);
    const double h = 2.0 * std::max(p * (1.0 - p), kMinHessian);
    grad[pos].g += p - 1.0;
    grad[pos].h += h;
    grad[neg].g += 1.0 - p;
    grad[neg].h += h;
  }
}

}  // namespace

GbdtModel train_gbdt(std::span<const double> values, std::size_t cols,
                     std::span<const std::uint8_t> labels, std::vector<std::string> feature_names,
                     const Hyperparams& hp) {
  hp.validate();
  const std::size_t rows = labels.size();
  if (values.size() != rows * cols) {
    throw InputError("feature matrix has " + std::to_string(values.size()) + " values for " +
                     std::to_string(rows) + " rows x " + std::to_string(cols) + " columns");
  }
  if (feature_names.size() != cols) throw InputError("feature name count does not match columns");
  if (rows < 2) throw InputError("training needs at least 2 rows");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InputError("non-finite feature value at row " + std::to_string(i / std::max<std::size_t>(cols, 1)) +
                       ", column " + std::to_string(i % std::max<std::size_t>(cols, 1)));
    }
  }
  std::vector<std::uint32_t> positives;
  std::vector<std::uint32_t> negatives;
  for (std::size_t i = 0; i < rows; ++i) {
    if (labels[i] > 1) throw InputError("labels must be 0 or 1");
    (labels[i] ? positives : negatives).push_back(static_cast<std::uint32_t>(i));
  }
  if (positives.empty() || negatives.empty()) {
    throw TrainingError("training labels contain a single class");
  }

  GbdtModel model;
  model.hp_ = hp;
  model.feature_names_ = std::move(feature_names);
  const double base_rate = double(positives.size()) / double(rows);
  model.base_score_ = std::log(base_rate / (1.0 - base_rate));

  std::vector<std::vector<std::uint32_t>> sorted(cols);
  for (std::size_t f = 0; f < cols; ++f) {
    auto& order = sorted[f];
    order.resize(rows);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return values[a * cols + f] < values[b * cols + f];
    });
  }

  std::vector<double> margin(rows, model.base_score_);
  std::vector<GradPair> grad(rows);
  auto row_rng = detail::make_engine(hp.seed, kRowSampleStream);
  auto col_rng = detail::make_engine(hp.seed, kColSampleStream);
  auto pair_rng = detail::make_engine(hp.seed, kPairStream);
  TreeBuilder builder(values, rows, cols, sorted, hp);

  const std::size_t cols_per_tree =
      cols == 0 ? 0
                : std::max<std::size_t>(
                      1, static_cast<std::size_t>(std::floor(hp.colsample_bytree * double(cols))));
  std::vector<std::size_t> all_features(cols);
  std::iota(all_features.begin(), all_features.end(), std::size_t{0});

  for (int round = 0; round < hp.n_estimators; ++round) {
    if (hp.objective == Objective::kLogistic) {
      for (std::size_t i = 0; i < rows; ++i) {
        const auto [g, h] = logistic_grad_hess(margin[i], labels[i]);
        grad[i] = {g, h};
      }
    } else {
      pairwise_gradients(margin, labels, positives, negatives, pair_rng, grad);
    }

    std::vector<int> row_node(rows, 0);
    if (hp.subsample < 1.0) {
      for (auto& r : row_node) r = detail::unit(row_rng) < hp.subsample ? 0 : -1;
    }
    std::vector<std::size_t> features = all_features;
    if (cols_per_tree < cols) {
      for (std::size_t i = 0; i < cols_per_tree; ++i) {
        const auto j = i + detail::bounded(col_rng, cols - i);
        std::swap(features[i], features[j]);
      }
      features.resize(cols_per_tree);
      std::sort(features.begin(), features.end());
    }

    auto tree = builder.build(grad, std::move(row_node), features);
    for (std::size_t i = 0; i < rows; ++i) margin[i] += tree.predict(values.subspan(i * cols, cols));
    model.trees_.push_back(std::move(tree));
  }
  return model;
}

namespace {

using nlohmann::json;

json hyperparams_json(const Hyperparams& hp) {
  return json{{"max_depth", hp.max_depth},
              {"n_estimators", hp.n_estimators},
              {"learning_rate", hp.learning_rate},
              {"lambda", hp.lambda},
              {"subsample", hp.subsample},
              {"colsample_bytree", hp.colsample_bytree},
              {"min_child_weight", hp.min_child_weight},
              {"gamma", hp.gamma},
              {"objective", objective_name(hp.objective)},
              {"seed", hp.seed}};
}

}  // namespace

std::string GbdtModel::to_json() const {
  json trees = json::array();
  for (const auto& tree : trees_) {
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const auto& n = tree.nodes[i];
      if (n.is_leaf()) {
        nodes.push_back({{"id", i}, {"leaf", n.value}, {"cover", n.cover}});
      } else {
        nodes.push_back({{"id", i},
                         {"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"gain", n.gain},
                         {"cover", n.cover}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  json doc = {{"format", "proxilink-gbdt"},
              {"version", 1},
              {"base_score", base_score_},
              {"learning_rate", hp_.learning_rate},
              {"objective", objective_name(hp_.objective)},
              {"feature_names", feature_names_},
              {"hyperparams", hyperparams_json(hp_)},
              {"trees", std::move(trees)}};
  return doc.dump(1);
}

GbdtModel GbdtModel::from_json(std::string_view text) {
  GbdtModel model;
  try {
    const auto doc = json::parse(text);
    if (doc.at("format") != "proxilink-gbdt") throw InputError("not a proxilink model dump");
    model.base_score_ = doc.at("base_score").get<double>();
    model.feature_names_ = doc.at("feature_names").get<std::vector<std::string>>();
    const auto& hp = doc.at("hyperparams");
    model.hp_.max_depth = hp.at("max_depth").get<int>();
    model.hp_.n_estimators = hp.at("n_estimators").get<int>();
    model.hp_.learning_rate = hp.at("learning_rate").get<double>();
    model.hp_.lambda = hp.at("lambda").get<double>();
    model.hp_.subsample = hp.at("subsample").get<double>();
    model.hp_.colsample_bytree = hp.at("colsample_bytree").get<double>();
    model.hp_.min_child_weight = hp.at("min_child_weight").get<double>();
    model.hp_.gamma = hp.at("gamma").get<double>();
    model.hp_.objective = parse_objective(hp.at("objective").get<std::string>());
    model.hp_.seed = hp.at("seed").get<std::uint64_t>();
    for (const auto& t : doc.at("trees")) {
      RegressionTree tree;
      for (const auto& n : t.at("nodes")) {
        TreeNode node;
        node.cover = n.value("cover", 0.0);
        if (n.contains("leaf")) {
          node.value = n.at("leaf").get<double>();
        } else {
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
          node.gain = n.value("gain", 0.0);
        }
        tree.nodes.push_back(node);
      }
      const int count = static_cast<int>(tree.nodes.size());
      for (const auto& node : tree.nodes) {
        if (!node.is_leaf() &&
            (node.feature >= static_cast<int>(model.feature_names_.size()) || node.left <= 0 ||
             node.right <= 0 || node.left >= count || node.right >= count)) {
          throw InputError("model dump contains an invalid tree node");
        }
      }
      model.trees_.push_back(std::move(tree));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model dump: ") + e.what());
  }
  return model;
}

void GbdtModel::save(const std::filesystem::path& path) const {
  auto out = detail::open_output(path);
  out << to_json() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

GbdtModel GbdtModel::load(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::vector<std::pair<std::string, double>> importance_report(const GbdtModel& model) {
  const auto weights = model.feature_importance();
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.emplace_back(model.feature_names()[i], weights[i]);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

void write_importance_csv(const std::filesystem::path& path, const GbdtModel& model) {
  auto out = detail::open_output(path);
  out << "name,weight\n";
  for (const auto& [name, w] : importance_report(model)) {
    out << name << ',' << detail::format_double(w) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace proxilink
