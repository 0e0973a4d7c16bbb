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

#include "proxilink/proxilink.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "proxilink/error.hpp"
#include "proxilink/gbdt.hpp"
#include "proxilink/graph.hpp"
#include "proxilink/metrics.hpp"
#include "proxilink/pipeline.hpp"
#include "proxilink/structural.hpp"

struct pl_graph {
  proxilink::Graph graph;
};

struct pl_gbdt {
  proxilink::GbdtModel model;
};

struct pl_config {
  proxilink::RunConfig config;
};

namespace {

thread_local std::string last_error;

template <typename F>
pl_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return PL_OK;
  } catch (const proxilink::InputError& e) {
    last_error = e.what();
    return PL_ERR_INPUT;
  } catch (const proxilink::ConfigError& e) {
    last_error = e.what();
    return PL_ERR_CONFIG;
  } catch (const proxilink::MetricError& e) {
    last_error = e.what();
    return PL_ERR_METRIC;
  } catch (const proxilink::TrainingError& e) {
    last_error = e.what();
    return PL_ERR_TRAINING;
  } catch (const proxilink::IoError& e) {
    last_error = e.what();
    return PL_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PL_ERR_INTERNAL;
  }
}

template <typename T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw proxilink::InputError(std::string(what) + " must not be NULL");
}

void require_node(const proxilink::Graph& g, uint32_t u) {
  if (u >= g.num_nodes()) {
    throw proxilink::InputError("node " + std::to_string(u) + " out of range for graph with " +
                                std::to_string(g.num_nodes()) + " nodes");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<proxilink::Edge> pairs_from(const uint32_t* ids, size_t count) {
  std::vector<proxilink::Edge> pairs(count);
  for (size_t i = 0; i < count; ++i) pairs[i] = {ids[2 * i], ids[2 * i + 1]};
  return pairs;
}

proxilink::Hyperparams to_core(const pl_hyperparams& h) {
  proxilink::Hyperparams hp;
  hp.max_depth = h.max_depth;
  hp.n_estimators = h.n_estimators;
  hp.learning_rate = h.learning_rate;
  hp.lambda = h.lambda;
  hp.subsample = h.subsample;
  hp.colsample_bytree = h.colsample_bytree;
  hp.min_child_weight = h.min_child_weight;
  hp.gamma = h.gamma;
  if (h.objective == PL_OBJ_LOGISTIC) {
    hp.objective = proxilink::Objective::kLogistic;
  } else if (h.objective == PL_OBJ_PAIRWISE) {
    hp.objective = proxilink::Objective::kPairwiseRank;
  } else {
    throw proxilink::ConfigError("unknown objective");
  }
  hp.seed = h.seed;
  hp.workers = h.workers;
  return hp;
}

std::string report_line(const proxilink::EvalReport& r) {
  std::ostringstream out;
  out << (r.k ? "hits@" + std::to_string(*r.k) : r.metric) << ": mean " << r.mean << " std "
      << r.std << " over " << r.per_seed.size() << " seed(s)";
  return out.str();
}

}  // namespace

extern "C" {

const char* pl_last_error(void) { return last_error.c_str(); }

const char* pl_status_name(pl_status status) {
  switch (status) {
    case PL_OK: return "ok";
    case PL_ERR_INPUT: return "input error";
    case PL_ERR_CONFIG: return "config error";
    case PL_ERR_METRIC: return "metric error";
    case PL_ERR_TRAINING: return "training error";
    case PL_ERR_IO: return "io error";
    case PL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pl_version(void) { return "0.1.0"; }

void pl_string_free(char* s) { std::free(s); }

pl_status pl_graph_create(size_t num_nodes, const uint32_t* edges, size_t num_edges,
                          pl_graph** out) {
  return guard([&] {
    require(out, "out");
    if (num_edges > 0) require(edges, "edges");
    const auto list = pairs_from(edges, num_edges);
    *out = new pl_graph{proxilink::Graph::build(num_nodes, list)};
  });
}

pl_status pl_graph_load(const char* path, pl_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    proxilink::NodeIndex index;
    const auto edges = proxilink::read_edge_list(path, index);
    *out = new pl_graph{proxilink::Graph::build(index.size(), edges)};
  });
}

void pl_graph_free(pl_graph* g) { delete g; }

size_t pl_graph_num_nodes(const pl_graph* g) { return g ? g->graph.num_nodes() : 0; }

size_t pl_graph_num_edges(const pl_graph* g) { return g ? g->graph.num_edges() : 0; }

pl_status pl_graph_degree(const pl_graph* g, uint32_t u, size_t* out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    require_node(g->graph, u);
    *out = g->graph.degree(u);
  });
}

pl_status pl_walk_count(const pl_graph* g, uint32_t u, uint32_t v, int k, uint64_t* out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    require_node(g->graph, u);
    require_node(g->graph, v);
    *out = proxilink::walk_count(g->graph, u, v, k);
  });
}

pl_status pl_distance(const pl_graph* g, uint32_t u, uint32_t v, uint32_t* out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    require_node(g->graph, u);
    require_node(g->graph, v);
    *out = static_cast<uint32_t>(proxilink::distance_excluding_direct_edge(g->graph, u, v));
  });
}

const char* pl_structural_name(size_t index) {
  if (index >= proxilink::kNumStructuralIndices) return nullptr;
  return proxilink::kStructuralNames[index].data();
}

pl_status pl_structural_vector(const pl_graph* g, uint32_t u, uint32_t v,
                               double out[PL_NUM_STRUCTURAL]) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    require_node(g->graph, u);
    require_node(g->graph, v);
    const auto s = proxilink::structural_vector(g->graph, u, v);
    std::copy(s.values.begin(), s.values.end(), out);
  });
}

pl_status pl_structural_batch(const pl_graph* g, const uint32_t* pairs, size_t count,
                              size_t workers, double* out) {
  return guard([&] {
    require(g, "graph");
    if (count == 0) return;
    require(pairs, "pairs");
    require(out, "out");
    const auto list = pairs_from(pairs, count);
    for (const auto& [u, v] : list) {
      require_node(g->graph, u);
      require_node(g->graph, v);
    }
    const auto rows = proxilink::structural_batch(g->graph, list, workers);
    for (size_t i = 0; i < rows.size(); ++i) {
      std::copy(rows[i].values.begin(), rows[i].values.end(), out + i * PL_NUM_STRUCTURAL);
    }
  });
}

pl_status pl_auc(const double* scores, const uint8_t* labels, size_t count, double* out) {
  return guard([&] {
    require(out, "out");
    if (count > 0) {
      require(scores, "scores");
      require(labels, "labels");
    }
    *out = proxilink::auc({scores, count}, {labels, count});
  });
}

pl_status pl_hits_at_k(const double* pos, size_t num_pos, const double* neg, size_t num_neg,
                       size_t k, double* out) {
  return guard([&] {
    require(out, "out");
    if (num_pos > 0) require(pos, "pos");
    if (num_neg > 0) require(neg, "neg");
    *out = proxilink::hits_at_k({pos, num_pos}, {neg, num_neg}, k);
  });
}

pl_status pl_transitivity(const pl_graph* g, size_t workers, double* out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    *out = proxilink::transitivity_ratio(g->graph, workers);
  });
}

pl_status pl_node_homophily(const pl_graph* g, const uint32_t* classes, int isolated_as_zero,
                            double* out) {
  return guard([&] {
    require(g, "graph");
    require(classes, "classes");
    require(out, "out");
    *out = proxilink::node_homophily(g->graph, {classes, g->graph.num_nodes()},
                                     isolated_as_zero ? proxilink::IsolatedNodes::kCountAsZero
                                                      : proxilink::IsolatedNodes::kExclude);
  });
}

pl_status pl_edge_homophily(const pl_graph* g, const uint32_t* classes, double* out) {
  return guard([&] {
    require(g, "graph");
    require(classes, "classes");
    require(out, "out");
    *out = proxilink::edge_homophily(g->graph, {classes, g->graph.num_nodes()});
  });
}

pl_status pl_hyperparams_preset(const char* name, pl_hyperparams* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto hp = proxilink::preset(name);
    out->max_depth = hp.max_depth;
    out->n_estimators = hp.n_estimators;
    out->learning_rate = hp.learning_rate;
    out->lambda = hp.lambda;
    out->subsample = hp.subsample;
    out->colsample_bytree = hp.colsample_bytree;
    out->min_child_weight = hp.min_child_weight;
    out->gamma = hp.gamma;
    out->objective =
        hp.objective == proxilink::Objective::kLogistic ? PL_OBJ_LOGISTIC : PL_OBJ_PAIRWISE;
    out->seed = hp.seed;
    out->workers = hp.workers;
  });
}

pl_status pl_gbdt_train(const double* values, size_t rows, size_t cols, const uint8_t* labels,
                        const char* const* names, const pl_hyperparams* hp, pl_gbdt** out) {
  return guard([&] {
    require(hp, "hyperparams");
    require(out, "out");
    if (rows > 0) {
      require(labels, "labels");
      if (cols > 0) require(values, "values");
    }
    std::vector<std::string> feature_names(cols);
    for (size_t j = 0; j < cols; ++j) {
      feature_names[j] = names && names[j] ? std::string(names[j]) : "f" + std::to_string(j);
    }
    auto model = proxilink::train_gbdt({values, rows * cols}, cols, {labels, rows},
                                       std::move(feature_names), to_core(*hp));
    *out = new pl_gbdt{std::move(model)};
  });
}

void pl_gbdt_free(pl_gbdt* model) { delete model; }

size_t pl_gbdt_num_features(const pl_gbdt* model) {
  return model ? model->model.num_features() : 0;
}

size_t pl_gbdt_num_trees(const pl_gbdt* model) { return model ? model->model.trees().size() : 0; }

pl_status pl_gbdt_predict(const pl_gbdt* model, const double* values, size_t rows, double* out) {
  return guard([&] {
    require(model, "model");
    if (rows == 0) return;
    require(out, "out");
    const size_t cols = model->model.num_features();
    if (cols > 0) require(values, "values");
    const auto p = model->model.predict({values, rows * cols}, cols);
    std::copy(p.begin(), p.end(), out);
  });
}

pl_status pl_gbdt_importance(const pl_gbdt* model, double* out) {
  return guard([&] {
    require(model, "model");
    const auto w = model->model.feature_importance();
    if (!w.empty()) require(out, "out");
    std::copy(w.begin(), w.end(), out);
  });
}

pl_status pl_gbdt_to_json(const pl_gbdt* model, char** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = copy_string(model->model.to_json());
  });
}

pl_status pl_gbdt_save(const pl_gbdt* model, const char* path) {
  return guard([&] {
    require(model, "model");
    require(path, "path");
    model->model.save(path);
  });
}

pl_status pl_gbdt_load(const char* path, pl_gbdt** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new pl_gbdt{proxilink::GbdtModel::load(path)};
  });
}

pl_status pl_config_load(const char* path, pl_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new pl_config{proxilink::RunConfig::load(path)};
  });
}

pl_status pl_config_parse(const char* json, const char* base_dir, pl_config** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    const std::filesystem::path base =
        base_dir ? std::filesystem::path(base_dir) : std::filesystem::current_path();
    *out = new pl_config{proxilink::RunConfig::from_json(json, base)};
  });
}

void pl_config_free(pl_config* config) { delete config; }

pl_status pl_config_set_seeds(pl_config* config, const uint64_t* seeds, size_t count) {
  return guard([&] {
    require(config, "config");
    if (count == 0) throw proxilink::ConfigError("at least one seed is required");
    require(seeds, "seeds");
    config->config.seeds.assign(seeds, seeds + count);
  });
}

pl_status pl_config_set_workers(pl_config* config, size_t workers) {
  return guard([&] {
    require(config, "config");
    if (workers == 0) throw proxilink::ConfigError("workers must be >= 1");
    config->config.workers = workers;
  });
}

pl_status pl_config_set_preset(pl_config* config, const char* name) {
  return guard([&] {
    require(config, "config");
    require(name, "name");
    auto& c = config->config.classifier;
    c.hyperparams = proxilink::preset(name);
    c.preset = name;
  });
}

pl_status pl_config_set_metrics(pl_config* config, const char* metrics) {
  return guard([&] {
    require(config, "config");
    require(metrics, "metrics");
    std::vector<proxilink::MetricSpec> parsed;
    std::string text(metrics);
    size_t start = 0;
    while (start <= text.size()) {
      const size_t comma = text.find(',', start);
      const auto item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      parsed.push_back(proxilink::MetricSpec::parse(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    config->config.metrics = std::move(parsed);
  });
}

pl_status pl_config_set_output_dir(pl_config* config, const char* dir) {
  return guard([&] {
    require(config, "config");
    require(dir, "dir");
    config->config.output_dir = std::filesystem::absolute(dir).lexically_normal();
  });
}

pl_status pl_config_validate(const pl_config* config) {
  return guard([&] {
    require(config, "config");
    config->config.validate();
  });
}

pl_status pl_config_to_json(const pl_config* config, char** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = copy_string(config->config.to_json(false));
  });
}

pl_status pl_config_run_id(const pl_config* config, char** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = copy_string(config->config.run_id());
  });
}

pl_status pl_run_stage(const pl_config* config, const char* stage, char** summary) {
  return guard([&] {
    require(config, "config");
    require(stage, "stage");
    const auto& c = config->config;
    const std::string name(stage);
    std::string text;
    auto describe = [&](const std::vector<proxilink::EvalReport>& reports) {
      for (const auto& r : reports) text += report_line(r) + "\n";
    };
    if (name == "analyze") {
      text = proxilink::run_analyze(c).to_table();
    } else if (name == "split") {
      proxilink::run_split(c);
    } else if (name == "featurize") {
      proxilink::run_featurize(c);
    } else if (name == "train") {
      proxilink::run_train(c);
    } else if (name == "eval") {
      describe(proxilink::run_eval(c));
    } else if (name == "run") {
      describe(proxilink::run_pipeline(c));
    } else {
      throw proxilink::ConfigError("unknown stage '" + name + "'");
    }
    if (summary) *summary = copy_string(text);
  });
}

}  // extern "C"
