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

#ifndef PROXILINK_PROXILINK_H_
#define PROXILINK_PROXILINK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PL_API __declspec(dllexport)
#else
#define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_INPUT = 1,
  PL_ERR_CONFIG = 2,
  PL_ERR_METRIC = 3,
  PL_ERR_TRAINING = 4,
  PL_ERR_IO = 5,
  PL_ERR_INTERNAL = 6
} pl_status;

typedef struct pl_graph pl_graph;
typedef struct pl_gbdt pl_gbdt;
typedef struct pl_config pl_config;

/* Message of the last failed call on this thread, "" if none. */
PL_API const char* pl_last_error(void);
PL_API const char* pl_status_name(pl_status status);
PL_API const char* pl_version(void);

/* Strings returned through char** are owned by the caller. */
PL_API void pl_string_free(char* s);

/* ---- graphs ---- */

/* `edges` holds 2*num_edges node ids (u0, v0, u1, v1, ...). */
PL_API pl_status pl_graph_create(size_t num_nodes, const uint32_t* edges, size_t num_edges,
                                 pl_graph** out);
/* Tab-separated edge list with arbitrary integer ids, remapped densely in
   order of first appearance. */
PL_API pl_status pl_graph_load(const char* path, pl_graph** out);
PL_API void pl_graph_free(pl_graph* g);
PL_API size_t pl_graph_num_nodes(const pl_graph* g);
PL_API size_t pl_graph_num_edges(const pl_graph* g);
PL_API pl_status pl_graph_degree(const pl_graph* g, uint32_t u, size_t* out);

PL_API pl_status pl_walk_count(const pl_graph* g, uint32_t u, uint32_t v, int k, uint64_t* out);
/* Shortest path length ignoring the edge (u, v); num_nodes when none. */
PL_API pl_status pl_distance(const pl_graph* g, uint32_t u, uint32_t v, uint32_t* out);

#define PL_NUM_STRUCTURAL 10
PL_API const char* pl_structural_name(size_t index);
PL_API pl_status pl_structural_vector(const pl_graph* g, uint32_t u, uint32_t v,
                                      double out[PL_NUM_STRUCTURAL]);
/* `pairs` holds 2*count ids; `out` receives count*PL_NUM_STRUCTURAL values. */
PL_API pl_status pl_structural_batch(const pl_graph* g, const uint32_t* pairs, size_t count,
                                     size_t workers, double* out);

/* ---- metrics ---- */

PL_API pl_status pl_auc(const double* scores, const uint8_t* labels, size_t count, double* out);
PL_API pl_status pl_hits_at_k(const double* pos, size_t num_pos, const double* neg,
                              size_t num_neg, size_t k, double* out);
PL_API pl_status pl_transitivity(const pl_graph* g, size_t workers, double* out);
/* `classes` has one label per node. Isolated nodes are skipped unless
   `isolated_as_zero` is nonzero. */
PL_API pl_status pl_node_homophily(const pl_graph* g, const uint32_t* classes,
                                   int isolated_as_zero, double* out);
PL_API pl_status pl_edge_homophily(const pl_graph* g, const uint32_t* classes, double* out);

/* ---- gradient boosted trees ---- */

typedef enum pl_objective { PL_OBJ_LOGISTIC = 0, PL_OBJ_PAIRWISE = 1 } pl_objective;

typedef struct pl_hyperparams {
  int max_depth;
  int n_estimators;
  double learning_rate;
  double lambda;
  double subsample;
  double colsample_bytree;
  double min_child_weight;
  double gamma;
  pl_objective objective;
  uint64_t seed;
  size_t workers;
} pl_hyperparams;

/* Names: "auc", "hits20", "hits50", "hits100". */
PL_API pl_status pl_hyperparams_preset(const char* name, pl_hyperparams* out);

/* Row-major rows x cols matrix; `names` may be NULL for f0..f{cols-1}. */
PL_API pl_status pl_gbdt_train(const double* values, size_t rows, size_t cols,
                               const uint8_t* labels, const char* const* names,
                               const pl_hyperparams* hp, pl_gbdt** out);
PL_API void pl_gbdt_free(pl_gbdt* model);
PL_API size_t pl_gbdt_num_features(const pl_gbdt* model);
PL_API size_t pl_gbdt_num_trees(const pl_gbdt* model);
/* Probabilities for `rows` rows of num_features values each. */
PL_API pl_status pl_gbdt_predict(const pl_gbdt* model, const double* values, size_t rows,
                                 double* out);
/* Normalized total gain, num_features values summing to 1 (or all 0). */
PL_API pl_status pl_gbdt_importance(const pl_gbdt* model, double* out);
PL_API pl_status pl_gbdt_to_json(const pl_gbdt* model, char** out);
PL_API pl_status pl_gbdt_save(const pl_gbdt* model, const char* path);
PL_API pl_status pl_gbdt_load(const char* path, pl_gbdt** out);

/* ---- pipeline ---- */

PL_API pl_status pl_config_load(const char* path, pl_config** out);
PL_API pl_status pl_config_parse(const char* json, const char* base_dir, pl_config** out);
PL_API void pl_config_free(pl_config* config);
PL_API pl_status pl_config_set_seeds(pl_config* config, const uint64_t* seeds, size_t count);
PL_API pl_status pl_config_set_workers(pl_config* config, size_t workers);
/* Replaces the classifier hyperparameters with the named preset. */
PL_API pl_status pl_config_set_preset(pl_config* config, const char* name);
/* Comma-separated list such as "auc,hits@50". */
PL_API pl_status pl_config_set_metrics(pl_config* config, const char* metrics);
PL_API pl_status pl_config_set_output_dir(pl_config* config, const char* dir);
PL_API pl_status pl_config_validate(const pl_config* config);
PL_API pl_status pl_config_to_json(const pl_config* config, char** out);
PL_API pl_status pl_config_run_id(const pl_config* config, char** out);

/* Runs "analyze", "split", "featurize", "train", "eval" or "run".
   `summary`, when not NULL, receives a human-readable result: the
   diagnostics table for analyze, one line per metric for eval and run,
   "" otherwise. */
PL_API pl_status pl_run_stage(const pl_config* config, const char* stage, char** summary);

#ifdef __cplusplus
}
#endif

#endif  // PROXILINK_PROXILINK_H_
