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

#include "proxilink/temporal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <tuple>

#include "proxilink/error.hpp"
#include "proxilink/parallel.hpp"
#include "text_io.hpp"

namespace proxilink {

void YearWindow::validate() const {
  if (first > last) {
    throw InputError("year window [" + std::to_string(first) + "," + std::to_string(last) +
                     "] is empty");
  }
}

std::uint64_t TemporalGraph::key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

TemporalGraph TemporalGraph::build(std::size_t num_nodes, std::vector<TemporalRecord> records) {
  TemporalGraph tg;
  tg.num_nodes_ = num_nodes;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    if (r.u >= num_nodes || r.v >= num_nodes) {
      throw InputError("temporal record #" + std::to_string(i) + " references a node >= " +
                       std::to_string(num_nodes));
    }
    if (r.u == r.v) {
      throw InputError("temporal record #" + std::to_string(i) + " is a self-loop");
    }
    if (r.weight <= 0) {
      throw InputError("temporal record #" + std::to_string(i) + " has non-positive weight");
    }
    if (r.u > r.v) std::swap(r.u, r.v);
  }
  std::sort(records.begin(), records.end(), [](const TemporalRecord& a, const TemporalRecord& b) {
    return std::tie(a.u, a.v, a.year, a.weight) < std::tie(b.u, b.v, b.year, b.weight);
  });
  tg.records_ = std::move(records);
  tg.by_node_.assign(num_nodes, {});
  for (std::size_t i = 0; i < tg.records_.size();) {
    std::size_t j = i;
    while (j < tg.records_.size() && tg.records_[j].u == tg.records_[i].u &&
           tg.records_[j].v == tg.records_[i].v) {
      ++j;
    }
    tg.pair_range_.emplace(key(tg.records_[i].u, tg.records_[i].v), std::make_pair(i, j));
    i = j;
  }
  for (std::size_t i = 0; i < tg.records_.size(); ++i) {
    tg.by_node_[tg.records_[i].u].push_back(i);
    tg.by_node_[tg.records_[i].v].push_back(i);
  }
  return tg;
}

std::span<const TemporalRecord> TemporalGraph::pair_records(NodeId u, NodeId v) const {
  auto it = pair_range_.find(key(u, v));
  if (it == pair_range_.end()) return {};
  return {records_.data() + it->second.first, it->second.second - it->second.first};
}

std::span<const std::size_t> TemporalGraph::node_records(NodeId u) const {
  if (u >= num_nodes_) throw InputError("node id " + std::to_string(u) + " out of range");
  return by_node_[u];
}

TemporalGraph TemporalGraph::up_to(int last_year) const {
  std::vector<TemporalRecord> kept;
  for (const auto& r : records_) {
    if (r.year <= last_year) kept.push_back(r);
  }
  return build(num_nodes_, std::move(kept));
}

WindowView::WindowView(const TemporalGraph& tg, YearWindow window) : window_(window) {
  window.validate();
  std::vector<Edge> edges;
  activity_.assign(tg.num_nodes(), 0);
  for (const auto& r : tg.records()) {
    if (!window.contains(r.year)) continue;
    auto [it, inserted] = weights_.try_emplace((std::uint64_t{r.u} << 32) | r.v, 0);
    it->second += r.weight;
    if (inserted) edges.emplace_back(r.u, r.v);
    activity_[r.u] += r.weight;
    activity_[r.v] += r.weight;
  }
  graph_ = Graph::build(tg.num_nodes(), edges);
}

std::int64_t WindowView::weight(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  auto it = weights_.find((std::uint64_t{u} << 32) | v);
  return it == weights_.end() ? 0 : it->second;
}

std::int64_t windowed_weight_sum(const TemporalGraph& tg, NodeId u, NodeId v, YearWindow window) {
  window.validate();
  if (u == v) throw InputError("windowed_weight_sum is defined on distinct node pairs");
  if (u >= tg.num_nodes() || v >= tg.num_nodes()) throw InputError("node id out of range");
  std::int64_t total = 0;
  for (const auto& r : tg.pair_records(u, v)) {
    if (window.contains(r.year)) total += r.weight;
  }
  return total;
}

std::int64_t activity(const WindowView& view, NodeId u) {
  if (u >= view.graph().num_nodes()) throw InputError("node id out of range");
  return view.activity(u);
}

std::int64_t preferential_attachment(const WindowView& view, NodeId u, NodeId v) {
  if (u == v) throw InputError("preferential_attachment is defined on distinct node pairs");
  return activity(view, u) * activity(view, v);
}

WeightedIndices weighted_indices(const WindowView& view, NodeId u, NodeId v) {
  if (u == v) throw InputError("weighted indices are defined on distinct node pairs");
  const auto& g = view.graph();
  const auto nu = g.neighbors(u);
  const auto nv = g.neighbors(v);
  WeightedIndices out;
  std::int64_t shared_weight = 0;
  auto i = nu.begin();
  auto j = nv.begin();
  while (i != nu.end() && j != nv.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      const NodeId z = *i;
      shared_weight += view.weight(u, z) + view.weight(z, v);
      const auto a = view.activity(z);
      if (a > 1) out.adamic_adar += 1.0 / std::log(static_cast<double>(a));
      ++i;
      ++j;
    }
  }
  const auto au = view.activity(u);
  const auto av = view.activity(v);
  // Σ over x in N(u) ∪ N(v) of W(u,x) + W(x,v) collapses to A(u) + A(v).
  const auto union_weight = au + av;
  out.jaccard = union_weight > 0 ? double(shared_weight) / double(union_weight) : 0.0;
  const double salton_denom = double(au) * double(av);
  out.salton = salton_denom > 0 ? double(shared_weight) / std::sqrt(salton_denom) : 0.0;
  return out;
}

std::size_t common_collaborators(const WindowView& view, NodeId u, NodeId v) {
  if (u == v) throw InputError("common collaborators are defined on distinct node pairs");
  return common_neighbor_count(view.graph(), u, v);
}

std::size_t windowed_common_collaborators(const TemporalGraph& tg, NodeId u, NodeId v,
                                          YearWindow window) {
  return common_collaborators(WindowView(tg, window), u, v);
}

namespace {

bool year_span(const TemporalGraph& tg, NodeId u, int& first, int& last) {
  const auto idx = tg.node_records(u);
  if (idx.empty()) return false;
  first = last = tg.records()[idx.front()].year;
  for (auto i : idx) {
    first = std::min(first, tg.records()[i].year);
    last = std::max(last, tg.records()[i].year);
  }
  return true;
}

}  // namespace

CareerFlags career_span_flags(const TemporalGraph& tg, NodeId u, int cutoff_year) {
  int first = 0;
  int last = 0;
  if (!year_span(tg, u, first, last)) {
    throw ConfigError("node " + std::to_string(u) + " has no collaboration records");
  }
  return {first < cutoff_year ? 0 : 1, last < cutoff_year ? 0 : 1};
}

std::vector<std::uint8_t> yearwise_labels(const TemporalGraph& tg, NodeId u, NodeId v,
                                          std::span<const int> years) {
  if (u >= tg.num_nodes() || v >= tg.num_nodes()) throw InputError("node id out of range");
  const auto recs = tg.pair_records(u, v);
  std::vector<std::uint8_t> out(years.size(), 0);
  for (std::size_t i = 0; i < years.size(); ++i) {
    out[i] = std::any_of(recs.begin(), recs.end(),
                         [&](const TemporalRecord& r) { return r.year == years[i]; });
  }
  return out;
}

std::vector<int> CollabConfig::label_years() const {
  std::vector<int> years;
  for (int y = label_first_year; y <= label_last_year; ++y) years.push_back(y);
  return years;
}

CollabFeaturizer::CollabFeaturizer(const TemporalGraph& tg, const NodeAttributes& attrs,
                                   CollabConfig config)
    : tg_(tg.up_to(config.train_last_year)),
      config_(config),
      all_(tg_, config.all_years),
      ten_(tg_, config.ten_years),
      five_(tg_, config.five_years) {
  if (!attrs.real) throw ConfigError("the collab profile requires the real (embedding) block");
  if (attrs.real->rows != tg.num_nodes()) {
    throw ConfigError("embedding block rows do not match the temporal graph's node count");
  }
  embeddings_ = *attrs.real;
}

std::vector<std::string> CollabFeaturizer::names() const {
  std::vector<std::string> names = {
      "oldest_u",      "oldest_v",      "newest_u",  "newest_v",         "w_all",
      "w_10",          "w_5",           "cc_all",    "cc_10",            "cc_5",
      "pref_attach",   "w_adamic_adar", "w_jaccard", "w_salton",         "graph_distance_10",
      "common_embedding", "l1_distance", "cosine_distance"};
  for (int y : config_.label_years()) names.push_back("la_" + std::to_string(y));
  return names;
}

std::vector<double> CollabFeaturizer::features_impl(NodeId u, NodeId v, bool lenient) const {
  if (u == v) throw InputError("collab features are defined on distinct node pairs");
  auto flags = [&](NodeId x) {
    if (lenient && tg_.node_records(x).empty()) return CareerFlags{};
    return career_span_flags(tg_, x, config_.career_cutoff);
  };
  const auto fu = flags(u);
  const auto fv = flags(v);
  const auto weighted = weighted_indices(ten_, u, v);
  const auto eu = embeddings_.row(u);
  const auto ev = embeddings_.row(v);

  std::vector<double> out = {
      double(fu.oldest),
      double(fv.oldest),
      double(fu.newest),
      double(fv.newest),
      double(all_.weight(u, v)),
      double(ten_.weight(u, v)),
      double(five_.weight(u, v)),
      double(common_collaborators(all_, u, v)),
      double(common_collaborators(ten_, u, v)),
      double(common_collaborators(five_, u, v)),
      double(preferential_attachment(ten_, u, v)),
      weighted.adamic_adar,
      weighted.jaccard,
      weighted.salton,
      double(distance_excluding_direct_edge(ten_.graph(), u, v)),
      double(common_embedding(eu, ev, config_.embedding_mode)),
      l1_distance(eu, ev),
      cosine_distance(eu, ev),
  };
  const auto years = config_.label_years();
  for (auto bit : yearwise_labels(tg_, u, v, years)) out.push_back(bit);
  return out;
}

std::vector<double> CollabFeaturizer::features(NodeId u, NodeId v) const {
  return features_impl(u, v, false);
}

std::vector<std::vector<double>> CollabFeaturizer::batch(std::span<const Edge> pairs,
                                                          std::size_t workers) const {
  std::vector<std::vector<double>> out(pairs.size());
  parallel_for_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = features_impl(pairs[i].first, pairs[i].second, true);
    }
  });
  std::size_t silent = 0;
  std::vector<bool> counted(tg_.num_nodes(), false);
  for (const auto& [u, v] : pairs) {
    for (NodeId x : {u, v}) {
      if (!counted[x] && tg_.node_records(x).empty()) {
        counted[x] = true;
        ++silent;
      }
    }
  }
  if (silent > 0) {
    std::clog << "warning: " << silent
              << " node(s) have no collaboration history; career flags default to (1,1)\n";
  }
  return out;
}

std::vector<TemporalRecord> read_temporal_edge_list(const std::filesystem::path& path,
                                                    NodeIndex& index) {
  auto in = detail::open_input(path);
  std::vector<TemporalRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split(body, "\t");
    TemporalRecord r;
    if (fields.size() != 4 || fields[0].empty() || fields[1].empty() ||
        !detail::parse_number(fields[2], r.year) || !detail::parse_number(fields[3], r.weight)) {
      throw InputError(detail::where(path, line_no) +
                       "expected 'u<TAB>v<TAB>year<TAB>weight', got '" + std::string(body) + "'");
    }
    r.u = index.intern(fields[0]);
    r.v = index.intern(fields[1]);
    records.push_back(r);
  }
  return records;
}

}  // namespace proxilink
