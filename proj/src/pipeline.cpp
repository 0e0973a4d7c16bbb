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

#include "proxilink/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "proxilink/error.hpp"
#include "proxilink/logistic.hpp"
#include "text_io.hpp"

namespace proxilink {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSplitNames[6] = {"train_pos", "valid_pos", "test_pos",
                                        "train_neg", "valid_neg", "test_neg"};

std::string read_text(const fs::path& path) {
  auto in = detail::open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = detail::open_output(path);
  out << text << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : fs::absolute(base / path).lexically_normal();
}

std::string path_text(const fs::path& p) { return p.empty() ? std::string() : p.string(); }

YearWindow window_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("year windows are [first, last] arrays");
  return {j[0].get<int>(), j[1].get<int>()};
}

void apply_overrides(Hyperparams& hp, const ordered_json& o) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    const auto& key = it.key();
    const auto& v = it.value();
    if (key == "max_depth") hp.max_depth = v.get<int>();
    else if (key == "n_estimators") hp.n_estimators = v.get<int>();
    else if (key == "learning_rate") hp.learning_rate = v.get<double>();
    else if (key == "lambda") hp.lambda = v.get<double>();
    else if (key == "subsample") hp.subsample = v.get<double>();
    else if (key == "colsample_bytree") hp.colsample_bytree = v.get<double>();
    else if (key == "min_child_weight") hp.min_child_weight = v.get<double>();
    else if (key == "gamma") hp.gamma = v.get<double>();
    else if (key == "objective") hp.objective = parse_objective(v.get<std::string>());
    else throw ConfigError("unknown classifier override '" + key + "'");
  }
}

ordered_json hyperparams_object(const Hyperparams& hp) {
  ordered_json o;
  o["max_depth"] = hp.max_depth;
  o["n_estimators"] = hp.n_estimators;
  o["learning_rate"] = hp.learning_rate;
  o["lambda"] = hp.lambda;
  o["subsample"] = hp.subsample;
  o["colsample_bytree"] = hp.colsample_bytree;
  o["min_child_weight"] = hp.min_child_weight;
  o["gamma"] = hp.gamma;
  o["objective"] = std::string(objective_name(hp.objective));
  return o;
}

// FNV-1a, printed as 16 hex digits.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
  const std::string prefix = std::string("stage '") + stage + "' failed: ";
  try {
    return body();
  } catch (const InputError& e) {
    throw InputError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const MetricError& e) {
    throw MetricError(prefix + e.what());
  } catch (const TrainingError& e) {
    throw TrainingError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const fs::filesystem_error& e) {
    throw IoError(prefix + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(prefix + e.what());
  }
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text, const fs::path& base_dir) {
  RunConfig c;
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    const auto& d = doc.at("dataset");
    c.dataset.name = d.value("name", std::string("dataset"));
    c.dataset.edges = resolve(base_dir, d.at("edges").get<std::string>());
    c.dataset.binary_features = resolve(base_dir, d.value("binary_features", std::string()));
    c.dataset.real_features = resolve(base_dir, d.value("real_features", std::string()));
    c.dataset.classes = resolve(base_dir, d.value("classes", std::string()));
    c.dataset.temporal = d.value("temporal", false);
    c.dataset.num_classes = d.value("num_classes", 0U);

    c.features.profile = parse_profile(doc.value("profile", std::string("binary")));
    if (doc.contains("features")) {
      const auto& f = doc["features"];
      c.features.mask_target_edge = f.value("mask_target_edge", true);
      c.features.groups = parse_feature_groups(f.value("groups", std::string("all")));
      c.features.domain.common_zeros = f.value("common_zeros", false);
      c.features.domain.common_embedding = f.value("common_embedding", false);
      const auto mode = f.value("embedding_mode", std::string("equal"));
      if (mode == "equal") {
        c.features.domain.embedding_mode = CommonEmbeddingMode::kEqualCoordinates;
      } else if (mode == "ones") {
        c.features.domain.embedding_mode = CommonEmbeddingMode::kMatchingOnes;
      } else {
        throw ConfigError("embedding_mode must be 'equal' or 'ones'");
      }
    }
    c.features.collab.embedding_mode = c.features.domain.embedding_mode;
    if (doc.contains("collab")) {
      const auto& t = doc["collab"];
      auto& cc = c.features.collab;
      if (t.contains("all_years")) cc.all_years = window_from(t["all_years"]);
      if (t.contains("ten_years")) cc.ten_years = window_from(t["ten_years"]);
      if (t.contains("five_years")) cc.five_years = window_from(t["five_years"]);
      if (t.contains("label_years")) {
        const auto w = window_from(t["label_years"]);
        cc.label_first_year = w.first;
        cc.label_last_year = w.last;
      }
      cc.career_cutoff = t.value("career_cutoff", cc.career_cutoff);
      cc.train_last_year = t.value("train_last_year", cc.train_last_year);
      cc.valid_year = t.value("valid_year", cc.valid_year);
      cc.test_year = t.value("test_year", cc.test_year);
    }

    if (doc.contains("split")) {
      const auto& s = doc["split"];
      if (s.contains("ratios")) {
        const auto r = s["ratios"].get<std::vector<double>>();
        if (r.size() != 3) throw ConfigError("split.ratios needs three values");
        c.ratios = {r[0], r[1], r[2]};
      }
      const auto scope = s.value("negative_scope", std::string("all"));
      if (scope == "all") {
        c.negative_scope = NegativeScope::kAllPositives;
      } else if (scope == "split") {
        c.negative_scope = NegativeScope::kSplitOnly;
      } else {
        throw ConfigError("split.negative_scope must be 'all' or 'split'");
      }
      c.valid_edges_in_test_graph = s.value("valid_edges_in_test_graph", false);
    }
    if (doc.contains("seeds")) c.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();

    if (doc.contains("classifier")) {
      const auto& k = doc["classifier"];
      const auto kind = k.value("kind", std::string("gbdt"));
      if (kind == "gbdt") {
        c.classifier.kind = ClassifierKind::kGbdt;
      } else if (kind == "logistic") {
        c.classifier.kind = ClassifierKind::kLogistic;
      } else {
        throw ConfigError("classifier.kind must be 'gbdt' or 'logistic'");
      }
      c.classifier.preset = k.value("preset", std::string("auc"));
      c.classifier.hyperparams = preset(c.classifier.preset);
      if (k.contains("overrides")) apply_overrides(c.classifier.hyperparams, k["overrides"]);
      if (k.contains("learning_rate_sweep")) {
        c.classifier.learning_rate_sweep = k["learning_rate_sweep"].get<std::vector<double>>();
      }
      c.classifier.logistic_l2 = k.value("logistic_l2", 1.0);
    }
    if (doc.contains("metrics")) {
      c.metrics.clear();
      for (const auto& m : doc["metrics"]) c.metrics.push_back(MetricSpec::parse(m.get<std::string>()));
    }
    if (doc.contains("analysis")) {
      const auto& a = doc["analysis"];
      const auto tg = a.value("transitivity_graph", std::string("full"));
      if (tg == "full") {
        c.transitivity_graph = TransitivityGraph::kFull;
      } else if (tg == "train") {
        c.transitivity_graph = TransitivityGraph::kTrain;
      } else {
        throw ConfigError("analysis.transitivity_graph must be 'full' or 'train'");
      }
      const auto iso = a.value("isolated_nodes", std::string("exclude"));
      if (iso == "exclude") {
        c.isolated_nodes = IsolatedNodes::kExclude;
      } else if (iso == "zero") {
        c.isolated_nodes = IsolatedNodes::kCountAsZero;
      } else {
        throw ConfigError("analysis.isolated_nodes must be 'exclude' or 'zero'");
      }
    }
    c.output_dir = resolve(base_dir, doc.value("output_dir", std::string("out")));
    c.workers = doc.value("workers", std::size_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file " + path.string() + " does not exist");
  return from_json(read_text(path), fs::absolute(path).parent_path());
}

std::string RunConfig::to_json(bool portable) const {
  ordered_json doc;
  ordered_json d;
  d["name"] = dataset.name;
  d["edges"] = portable ? dataset.edges.filename().string() : path_text(dataset.edges);
  auto optional_path = [&](const char* key, const fs::path& p) {
    if (!p.empty()) d[key] = portable ? p.filename().string() : p.string();
  };
  optional_path("binary_features", dataset.binary_features);
  optional_path("real_features", dataset.real_features);
  optional_path("classes", dataset.classes);
  d["temporal"] = dataset.temporal;
  d["num_classes"] = dataset.num_classes;
  doc["dataset"] = d;
  doc["profile"] = std::string(profile_name(features.profile));
  doc["features"] = {
      {"mask_target_edge", features.mask_target_edge},
      {"groups", std::string(feature_groups_name(features.groups))},
      {"common_zeros", features.domain.common_zeros},
      {"common_embedding", features.domain.common_embedding},
      {"embedding_mode", features.domain.embedding_mode == CommonEmbeddingMode::kEqualCoordinates
                             ? "equal"
                             : "ones"}};
  if (features.profile == Profile::kCollab) {
    const auto& cc = features.collab;
    doc["collab"] = {{"all_years", {cc.all_years.first, cc.all_years.last}},
                     {"ten_years", {cc.ten_years.first, cc.ten_years.last}},
                     {"five_years", {cc.five_years.first, cc.five_years.last}},
                     {"label_years", {cc.label_first_year, cc.label_last_year}},
                     {"career_cutoff", cc.career_cutoff},
                     {"train_last_year", cc.train_last_year},
                     {"valid_year", cc.valid_year},
                     {"test_year", cc.test_year}};
  }
  doc["split"] = {
      {"ratios", {ratios.train, ratios.valid, ratios.test}},
      {"negative_scope", negative_scope == NegativeScope::kAllPositives ? "all" : "split"},
      {"valid_edges_in_test_graph", valid_edges_in_test_graph}};
  doc["seeds"] = seeds;
  ordered_json k;
  k["kind"] = classifier.kind == ClassifierKind::kGbdt ? "gbdt" : "logistic";
  k["preset"] = classifier.preset;
  k["overrides"] = hyperparams_object(classifier.hyperparams);
  k["learning_rate_sweep"] = classifier.learning_rate_sweep;
  k["logistic_l2"] = classifier.logistic_l2;
  doc["classifier"] = k;
  ordered_json m = ordered_json::array();
  for (const auto& spec : metrics) m.push_back(spec.label());
  doc["metrics"] = m;
  doc["analysis"] = {
      {"transitivity_graph", transitivity_graph == TransitivityGraph::kFull ? "full" : "train"},
      {"isolated_nodes", isolated_nodes == IsolatedNodes::kExclude ? "exclude" : "zero"}};
  if (!portable) {
    doc["output_dir"] = output_dir.string();
    doc["workers"] = workers;
  }
  return doc.dump(2);
}

void RunConfig::validate() const {
  auto require_file = [](const fs::path& p, const char* what) {
    if (!p.empty() && !fs::is_regular_file(p)) {
      throw ConfigError(std::string(what) + " file " + p.string() + " does not exist");
    }
  };
  if (dataset.edges.empty()) throw ConfigError("dataset.edges is required");
  require_file(dataset.edges, "edge list");
  require_file(dataset.binary_features, "binary attribute");
  require_file(dataset.real_features, "real attribute");
  require_file(dataset.classes, "class label");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (metrics.empty()) throw ConfigError("at least one metric is required");
  if (workers == 0) throw ConfigError("workers must be >= 1");
  ratios.validate();
  classifier.hyperparams.validate();
  for (double lr : classifier.learning_rate_sweep) {
    if (!(lr > 0 && lr <= 1)) throw ConfigError("learning_rate_sweep values must be in (0, 1]");
  }
  switch (features.profile) {
    case Profile::kBinary:
      if (dataset.binary_features.empty()) throw ConfigError("profile 'binary' requires dataset.binary_features");
      if (dataset.classes.empty()) throw ConfigError("profile 'binary' requires dataset.classes");
      break;
    case Profile::kPpa:
      if (dataset.classes.empty()) throw ConfigError("profile 'ppa' requires dataset.classes");
      break;
    case Profile::kReal:
      if (dataset.real_features.empty()) throw ConfigError("profile 'real' requires dataset.real_features");
      break;
    case Profile::kCollab:
      if (!dataset.temporal) throw ConfigError("profile 'collab' requires a temporal edge list");
      if (dataset.real_features.empty()) throw ConfigError("profile 'collab' requires dataset.real_features");
      features.collab.all_years.validate();
      features.collab.ten_years.validate();
      features.collab.five_years.validate();
      break;
  }
  if (features.profile == Profile::kCollab && features.groups != FeatureGroups::kAll) {
    throw ConfigError("feature groups apply to static profiles only");
  }
  if (dataset.temporal && features.profile != Profile::kCollab) {
    throw ConfigError("temporal edge lists are only supported by the collab profile");
  }
}

std::string RunConfig::run_id() const { return digest(to_json(true)); }

Dataset load_dataset(const RunConfig& config) {
  Dataset data;
  data.name = config.dataset.name;
  std::vector<Edge> edges;
  std::vector<TemporalRecord> records;
  if (config.dataset.temporal) {
    records = read_temporal_edge_list(config.dataset.edges, data.index);
    for (const auto& r : records) edges.emplace_back(r.u, r.v);
  } else {
    edges = read_edge_list(config.dataset.edges, data.index);
  }
  for (const auto* p : {&config.dataset.binary_features, &config.dataset.real_features,
                        &config.dataset.classes}) {
    if (!p->empty()) intern_attribute_ids(*p, data.index);
  }
  const std::size_t n = data.index.size();
  data.graph = Graph::build(n, edges);
  if (config.dataset.temporal) data.temporal = TemporalGraph::build(n, std::move(records));

  data.attrs.num_nodes = n;
  if (!config.dataset.binary_features.empty()) {
    data.attrs.binary = read_binary_block(config.dataset.binary_features, data.index);
  }
  if (!config.dataset.real_features.empty()) {
    data.attrs.real = read_real_block(config.dataset.real_features, data.index);
  }
  if (!config.dataset.classes.empty()) {
    data.attrs.classes = read_class_block(config.dataset.classes, data.index, config.dataset.num_classes);
  }
  if (data.attrs.binary || data.attrs.real || data.attrs.classes) data.attrs.validate();
  return data;
}

std::string Diagnostics::to_json() const {
  ordered_json doc;
  doc["dataset"] = dataset;
  doc["nodes"] = nodes;
  doc["edges"] = edges;
  doc["classes"] = classes;
  doc["transitivity_graph"] = transitivity_graph;
  doc["transitivity"] = transitivity;
  doc["node_homophily"] = node_homophily ? ordered_json(*node_homophily) : ordered_json(nullptr);
  doc["edge_homophily"] = edge_homophily ? ordered_json(*edge_homophily) : ordered_json(nullptr);
  return doc.dump(2);
}

std::string Diagnostics::to_table() const {
  std::ostringstream out;
  auto row = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(22) << key << value << '\n';
  };
  auto num = [](double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << x;
    return s.str();
  };
  row("dataset", dataset);
  row("nodes", std::to_string(nodes));
  row("edges", std::to_string(edges));
  row("classes", std::to_string(classes));
  row("transitivity (" + transitivity_graph + ")", num(transitivity));
  row("node homophily", node_homophily ? num(*node_homophily) : "n/a");
  row("edge homophily", edge_homophily ? num(*edge_homophily) : "n/a");
  return out.str();
}

Diagnostics analyze(const Dataset& data, const RunConfig& config) {
  Diagnostics d;
  d.dataset = data.name;
  d.nodes = data.graph.num_nodes();
  d.edges = data.graph.num_edges();
  if (data.attrs.classes) {
    d.classes = data.attrs.classes->num_classes;
    d.node_homophily = node_homophily(data.graph, data.attrs.classes->labels, config.isolated_nodes);
    d.edge_homophily = edge_homophily(data.graph, data.attrs.classes->labels);
  }
  if (config.transitivity_graph == TransitivityGraph::kFull) {
    d.transitivity_graph = "full";
    d.transitivity = transitivity_ratio(data.graph, config.workers);
  } else {
    d.transitivity_graph = "train";
    const auto split = split_edges(data.graph.edges(), config.ratios, config.seeds.front());
    d.transitivity = transitivity_ratio(observed_graph(d.nodes, split), config.workers);
  }
  return d;
}

fs::path seed_dir(const RunConfig& config, std::uint64_t seed) {
  return config.output_dir / ("seed_" + std::to_string(seed));
}

namespace {

std::vector<Edge>* split_member(DatasetSplit& s, int i) {
  std::vector<Edge>* members[6] = {&s.train_pos, &s.valid_pos, &s.test_pos,
                                   &s.train_neg, &s.valid_neg, &s.test_neg};
  return members[i];
}

void split_seed(const RunConfig& config, const Dataset& data, std::uint64_t seed) {
  DatasetSplit split;
  if (config.features.profile == Profile::kCollab) {
    split = temporal_split(*data.temporal, config.features.collab);
    split.seed = seed;
  } else {
    split = split_edges(data.graph.edges(), config.ratios, seed);
  }
  fill_negatives(split, data.graph.num_nodes(), config.negative_scope);
  const auto dir = seed_dir(config, seed) / "split";
  for (int i = 0; i < 6; ++i) {
    write_edge_list(dir / (std::string(kSplitNames[i]) + ".tsv"), *split_member(split, i));
  }
}

DatasetSplit read_split(const RunConfig& config, std::uint64_t seed, std::size_t num_nodes) {
  DatasetSplit split;
  split.seed = seed;
  split.ratios = config.ratios;
  const auto dir = seed_dir(config, seed) / "split";
  for (int i = 0; i < 6; ++i) {
    const auto path = dir / (std::string(kSplitNames[i]) + ".tsv");
    if (!fs::exists(path)) {
      throw IoError("missing split artifact " + path.string() + " (run the split stage first)");
    }
    *split_member(split, i) = read_internal_edge_list(path, num_nodes);
  }
  return split;
}

void featurize_seed(const RunConfig& config, const Dataset& data, std::uint64_t seed) {
  const auto split = read_split(config, seed, data.graph.num_nodes());
  AssembledFeatures features;
  if (config.features.profile == Profile::kCollab) {
    features = assemble_collab(*data.temporal, data.attrs, split, config.features.collab,
                               config.workers);
  } else {
    features = assemble(data.graph.num_nodes(), data.attrs, split, config.features,
                        {config.valid_edges_in_test_graph, config.workers});
  }
  const auto dir = seed_dir(config, seed) / "features";
  write_feature_csv(dir / "train.csv", features.train);
  write_feature_csv(dir / "valid.csv", features.valid);
  write_feature_csv(dir / "test.csv", features.test);
}

FeatureMatrix read_features(const RunConfig& config, std::uint64_t seed, const char* which) {
  const auto path = seed_dir(config, seed) / "features" / (std::string(which) + ".csv");
  if (!fs::exists(path)) {
    throw IoError("missing feature artifact " + path.string() + " (run the featurize stage first)");
  }
  return read_feature_csv(path);
}

double score_metric(const MetricSpec& metric, std::span<const double> scores,
                    std::span<const std::uint8_t> labels) {
  if (metric.name == "auc") return auc(scores, labels);
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] ? pos : neg).push_back(scores[i]);
  return hits_at_k(pos, neg, metric.k);
}

std::string logistic_json(const LogisticModel& m, const std::vector<std::string>& names) {
  ordered_json doc;
  doc["format"] = "proxilink-logistic";
  doc["feature_names"] = names;
  doc["weights"] = m.weights;
  doc["bias"] = m.bias;
  doc["mean"] = m.mean;
  doc["scale"] = m.scale;
  doc["iterations"] = m.iterations;
  doc["gradient_norm"] = m.gradient_norm;
  return doc.dump(1);
}

LogisticModel logistic_from_json(const std::string& text, std::vector<std::string>& names) {
  const auto doc = ordered_json::parse(text);
  if (doc.at("format") != "proxilink-logistic") throw InputError("not a logistic model dump");
  LogisticModel m;
  names = doc.at("feature_names").get<std::vector<std::string>>();
  m.weights = doc.at("weights").get<std::vector<double>>();
  m.bias = doc.at("bias").get<double>();
  m.mean = doc.at("mean").get<std::vector<double>>();
  m.scale = doc.at("scale").get<std::vector<double>>();
  m.iterations = doc.at("iterations").get<int>();
  m.gradient_norm = doc.at("gradient_norm").get<double>();
  return m;
}

void train_seed(const RunConfig& config, std::uint64_t seed) {
  const auto train = read_features(config, seed, "train");
  const auto dir = seed_dir(config, seed);
  if (config.classifier.kind == ClassifierKind::kLogistic) {
    const auto model = train_logistic(train.values, train.cols(), train.labels,
                                      config.classifier.logistic_l2, seed);
    write_text(dir / "model_logistic.json", logistic_json(model, train.names));
    return;
  }
  Hyperparams hp = config.classifier.hyperparams;
  hp.seed = seed;
  hp.workers = config.workers;
  ordered_json selection;
  if (!config.classifier.learning_rate_sweep.empty()) {
    // Pick the learning rate with the best validation score; ties keep the
    // earlier candidate.
    const auto valid = read_features(config, seed, "valid");
    double best = -1.0;
    double chosen = config.classifier.learning_rate_sweep.front();
    ordered_json tried = ordered_json::array();
    for (double lr : config.classifier.learning_rate_sweep) {
      Hyperparams candidate = hp;
      candidate.learning_rate = lr;
      const auto model = train_gbdt(train.values, train.cols(), train.labels, train.names, candidate);
      const double s = score_metric(config.metrics.front(), model.predict(valid.values, valid.cols()),
                                    valid.labels);
      tried.push_back({{"learning_rate", lr}, {"valid_" + config.metrics.front().label(), s}});
      if (s > best) {
        best = s;
        chosen = lr;
      }
    }
    hp.learning_rate = chosen;
    selection["sweep"] = tried;
    selection["selected_learning_rate"] = chosen;
    write_text(dir / "sweep.json", selection.dump(2));
  }
  const auto model = train_gbdt(train.values, train.cols(), train.labels, train.names, hp);
  model.save(dir / "model.json");
  write_importance_csv(dir / "importance.csv", model);
}

std::vector<double> eval_seed(const RunConfig& config, std::uint64_t seed) {
  const auto test = read_features(config, seed, "test");
  const auto dir = seed_dir(config, seed);
  std::vector<double> scores;
  if (config.classifier.kind == ClassifierKind::kLogistic) {
    const auto path = dir / "model_logistic.json";
    if (!fs::exists(path)) throw IoError("missing model " + path.string() + " (run the train stage first)");
    std::vector<std::string> names;
    const auto model = logistic_from_json(read_text(path), names);
    if (names != test.names) throw InputError("model feature names do not match the test features");
    scores = model.predict(test.values, test.rows());
  } else {
    const auto path = dir / "model.json";
    if (!fs::exists(path)) throw IoError("missing model " + path.string() + " (run the train stage first)");
    const auto model = GbdtModel::load(path);
    if (model.feature_names() != test.names) {
      throw InputError("model feature names do not match the test features");
    }
    scores = model.predict(test.values, test.cols());
  }
  {
    auto out = detail::open_output(dir / "scores_test.csv");
    out << "u,v,label,score\n";
    for (std::size_t i = 0; i < test.rows(); ++i) {
      out << test.pairs[i].first << ',' << test.pairs[i].second << ',' << int(test.labels[i])
          << ',' << detail::format_double(scores[i]) << '\n';
    }
  }
  std::vector<double> values;
  ordered_json doc;
  doc["seed"] = seed;
  for (const auto& metric : config.metrics) {
    values.push_back(score_metric(metric, scores, test.labels));
    doc["metrics"][metric.label()] = values.back();
  }
  write_text(dir / "metrics.json", doc.dump(2));
  return values;
}

std::vector<EvalReport> write_reports(const RunConfig& config,
                                      const std::vector<std::vector<double>>& per_seed) {
  std::vector<EvalReport> reports;
  for (std::size_t m = 0; m < config.metrics.size(); ++m) {
    std::vector<double> values;
    for (const auto& seed_values : per_seed) values.push_back(seed_values[m]);
    auto report = aggregate(values);
    report.metric = config.metrics[m].name == "auc" ? "auc" : "hits";
    if (config.metrics[m].name != "auc") report.k = config.metrics[m].k;
    report.seeds = config.seeds;
    report.dataset = config.dataset.name;
    report.preset = config.classifier.kind == ClassifierKind::kGbdt ? config.classifier.preset
                                                                    : std::string("logistic");
    report.run_id = config.run_id();
    write_text(config.output_dir / ("report_" + config.metrics[m].label() + ".json"), report.to_json());
    if (m == 0) write_text(config.output_dir / "report.json", report.to_json());
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_manifest(const RunConfig& config, const Dataset& data) {
  write_text(config.output_dir / "manifest.json", config.to_json(false));
  write_remap_csv(config.output_dir / "remap.csv", data.index);
}

}  // namespace

Diagnostics run_analyze(const RunConfig& config) {
  return in_stage("analyze", [&] {
    config.validate();
    const auto data = load_dataset(config);
    auto diag = analyze(data, config);
    write_text(config.output_dir / "analysis.json", diag.to_json());
    return diag;
  });
}

void run_split(const RunConfig& config) {
  in_stage("split", [&] {
    config.validate();
    const auto data = load_dataset(config);
    write_manifest(config, data);
    for (auto seed : config.seeds) split_seed(config, data, seed);
  });
}

void run_featurize(const RunConfig& config) {
  in_stage("featurize", [&] {
    config.validate();
    const auto data = load_dataset(config);
    for (auto seed : config.seeds) featurize_seed(config, data, seed);
  });
}

void run_train(const RunConfig& config) {
  in_stage("train", [&] {
    config.validate();
    for (auto seed : config.seeds) train_seed(config, seed);
  });
}

std::vector<EvalReport> run_eval(const RunConfig& config) {
  return in_stage("eval", [&] {
    config.validate();
    std::vector<std::vector<double>> per_seed;
    for (auto seed : config.seeds) per_seed.push_back(eval_seed(config, seed));
    return write_reports(config, per_seed);
  });
}

std::vector<EvalReport> run_pipeline(const RunConfig& config) {
  config.validate();
  const auto data = in_stage("load", [&] { return load_dataset(config); });
  in_stage("split", [&] { write_manifest(config, data); });
  std::vector<std::vector<double>> per_seed;
  for (auto seed : config.seeds) {
    try {
      in_stage("split", [&] { split_seed(config, data, seed); });
      in_stage("featurize", [&] { featurize_seed(config, data, seed); });
      in_stage("train", [&] { train_seed(config, seed); });
      per_seed.push_back(in_stage("eval", [&] { return eval_seed(config, seed); }));
    } catch (...) {
      const auto src = seed_dir(config, seed);
      const auto dst = config.output_dir / "failed" / src.filename();
      std::error_code ec;
      if (fs::exists(src, ec)) {
        fs::create_directories(dst.parent_path(), ec);
        fs::remove_all(dst, ec);
        fs::rename(src, dst, ec);
      }
      throw;
    }
  }
  return in_stage("eval", [&] { return write_reports(config, per_seed); });
}

}  // namespace proxilink
