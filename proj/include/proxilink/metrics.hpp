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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxilink/graph.hpp"

namespace proxilink {

/// Mann-Whitney AUC: fraction of (positive, negative) pairs ordered
/// correctly, ties counted one half. Throws MetricError unless both classes
/// are present.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Fraction of positives scoring strictly above the k-th highest negative.
/// Throws InputError when k is 0 or exceeds the negative count.
double hits_at_k(std::span<const double> pos_scores, std::span<const double> neg_scores,
                 std::size_t k);

/// Linked pairs among unordered pairs sharing at least one common neighbor.
/// Throws MetricError when no pair shares a neighbor.
double transitivity_ratio(const Graph& g, std::size_t workers = 1);

enum class IsolatedNodes {
  kExclude,     // average over non-isolated nodes only
  kCountAsZero  // isolated nodes contribute 0 to an average over all nodes
};

/// Average over nodes of the same-class fraction of neighbors.
double node_homophily(const Graph& g, std::span<const std::uint32_t> classes,
                      IsolatedNodes policy = IsolatedNodes::kExclude);
/// Fraction of edges joining same-class endpoints.
double edge_homophily(const Graph& g, std::span<const std::uint32_t> classes);

/// A metric name such as "auc", "hits@50".
struct MetricSpec {
  std::string name;  // "auc" or "hits"
  std::size_t k = 0;

  static MetricSpec parse(std::string_view text);
  std::string label() const;
};

struct EvalReport {
  std::string metric;
  std::optional<std::size_t> k;
  std::vector<std::uint64_t> seeds;
  std::vector<double> per_seed;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::string dataset;
  std::string preset;
  std::string run_id;

  std::string to_json() const;
};

/// Mean and population standard deviation of per-seed values. Throws
/// InputError when `values` is empty.
EvalReport aggregate(std::span<const double> values);

}  // namespace proxilink
