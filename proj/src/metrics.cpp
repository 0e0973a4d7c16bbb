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

#include "proxilink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "proxilink/error.hpp"
#include "proxilink/parallel.hpp"

namespace proxilink {

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw InputError("auc: scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Walk tie groups in ascending score; each positive beats every negative
  // seen so far and ties half of the negatives in its own group.
  double wins = 0.0;
  double negatives_below = 0.0;
  double positives = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    double pos = 0;
    double neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (std::isnan(scores[order[j]])) throw InputError("auc: NaN score");
      (labels[order[j]] ? pos : neg) += 1;
      ++j;
    }
    wins += pos * negatives_below + 0.5 * pos * neg;
    negatives_below += neg;
    positives += pos;
    i = j;
  }
  if (positives == 0 || negatives_below == 0) {
    throw MetricError("auc needs both positive and negative labels");
  }
  return wins / (positives * negatives_below);
}

double hits_at_k(std::span<const double> pos_scores, std::span<const double> neg_scores,
                 std::size_t k) {
  if (k == 0 || k > neg_scores.size()) {
    throw InputError("hits@" + std::to_string(k) + " needs 1 <= k <= " +
                     std::to_string(neg_scores.size()) + " negatives");
  }
  if (pos_scores.empty()) throw MetricError("hits@k needs at least one positive");
  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::nth_element(neg.begin(), neg.begin() + std::ptrdiff_t(k - 1), neg.end(),
                   std::greater<>());
  const double threshold = neg[k - 1];
  const auto hits = std::count_if(pos_scores.begin(), pos_scores.end(),
                                  [&](double s) { return s > threshold; });
  return double(hits) / double(pos_scores.size());
}

double transitivity_ratio(const Graph& g, std::size_t workers) {
  const std::size_t n = g.num_nodes();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::vector<std::uint64_t> qualifying(workers, 0);
  std::vector<std::uint64_t> linked(workers, 0);
  const std::size_t chunk = (n + workers - 1) / std::max<std::size_t>(workers, 1);
  parallel_for_chunks(workers, workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      std::vector<NodeId> stamp(n, NodeId(-1));
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t u = begin; u < end; ++u) {
        // Two-hop partners v > u, each counted once.
        for (NodeId mid : g.neighbors(NodeId(u))) {
          for (NodeId v : g.neighbors(mid)) {
            if (v <= u || stamp[v] == u) continue;
            stamp[v] = NodeId(u);
            ++qualifying[w];
          }
        }
        for (NodeId v : g.neighbors(NodeId(u))) {
          if (v > u && stamp[v] == u) ++linked[w];
        }
      }
    }
  });
  const auto q = std::accumulate(qualifying.begin(), qualifying.end(), std::uint64_t{0});
  const auto l = std::accumulate(linked.begin(), linked.end(), std::uint64_t{0});
  if (q == 0) throw MetricError("transitivity ratio is undefined: no pair shares a neighbor");
  return double(l) / double(q);
}

namespace {

void check_classes(const Graph& g, std::span<const std::uint32_t> classes) {
  if (classes.size() != g.num_nodes()) {
    throw InputError("class labels cover " + std::to_string(classes.size()) + " of " +
                     std::to_string(g.num_nodes()) + " nodes");
  }
}

}  // namespace

double node_homophily(const Graph& g, std::span<const std::uint32_t> classes,
                      IsolatedNodes policy) {
  check_classes(g, classes);
  double total = 0.0;
  std::size_t counted = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    const auto same = std::count_if(nbrs.begin(), nbrs.end(),
                                    [&](NodeId w) { return classes[w] == classes[v]; });
    total += double(same) / double(nbrs.size());
    ++counted;
  }
  if (counted == 0) throw MetricError("node homophily is undefined: every node is isolated");
  const double denom = policy == IsolatedNodes::kExclude ? double(counted) : double(g.num_nodes());
  return total / denom;
}

double edge_homophily(const Graph& g, std::span<const std::uint32_t> classes) {
  check_classes(g, classes);
  if (g.num_edges() == 0) throw MetricError("edge homophily is undefined: graph has no edges");
  std::size_t same = 0;
  for (const auto& [u, v] : g.edges()) same += classes[u] == classes[v];
  return double(same) / double(g.num_edges());
}

MetricSpec MetricSpec::parse(std::string_view text) {
  if (text == "auc") return {"auc", 0};
  constexpr std::string_view prefix = "hits@";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    std::size_t k = 0;
    bool ok = !digits.empty();
    for (char c : digits) {
      if (c < '0' || c > '9') ok = false;
      k = k * 10 + std::size_t(c - '0');
    }
    if (ok && k > 0) return {"hits", k};
  }
  throw ConfigError("unknown metric '" + std::string(text) + "' (expected auc or hits@K)");
}

std::string MetricSpec::label() const { return name == "auc" ? "auc" : "hits@" + std::to_string(k); }

EvalReport aggregate(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot aggregate an empty run list");
  EvalReport report;
  report.per_seed.assign(values.begin(), values.end());
  // Sorted summation makes the result independent of run order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = double(sorted.size());
  report.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double sq = 0.0;
  for (double x : sorted) sq += (x - report.mean) * (x - report.mean);
  report.std = std::sqrt(sq / n);
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["metric"] = metric;
  doc["per_seed"] = per_seed;
  doc["seeds"] = seeds;
  doc["mean"] = mean;
  doc["std"] = std;
  if (k) doc["k"] = *k;
  doc["dataset"] = dataset;
  doc["preset"] = preset;
  doc["run_id"] = run_id;
  return doc.dump(2);
}

}  // namespace proxilink
