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

#include "proxilink/graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "proxilink/error.hpp"
#include "text_io.hpp"

namespace proxilink {

namespace {

void require_distinct(NodeId u, NodeId v, const char* what) {
  if (u == v) {
    throw InputError(std::string(what) + " is defined on distinct node pairs, got (" +
                     std::to_string(u) + "," + std::to_string(v) + ")");
  }
}

std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

Graph Graph::build(std::size_t num_nodes, std::span<const Edge> edges) {
  if (num_nodes > std::numeric_limits<NodeId>::max()) {
    throw InputError("node count " + std::to_string(num_nodes) + " exceeds id range");
  }
  std::vector<Edge> canonical;
  canonical.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= num_nodes || v >= num_nodes) {
      throw InputError("edge #" + std::to_string(i) + " (" + std::to_string(u) + "," +
                       std::to_string(v) + ") references a node >= " +
                       std::to_string(num_nodes));
    }
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    canonical.emplace_back(u, v);
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());

  Graph g;
  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& [u, v] : canonical) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : canonical) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  return g;
}

void Graph::check_node(NodeId u) const {
  if (u >= num_nodes()) {
    throw InputError("node id " + std::to_string(u) + " out of range (num_nodes=" +
                     std::to_string(num_nodes()) + ")");
  }
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  check_node(u);
  return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nu = neighbors(u);
  check_node(v);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u + 1 < offsets_.size(); ++u) {
    best = std::max(best, offsets_[u + 1] - offsets_[u]);
  }
  return best;
}

std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v) {
  return sorted_intersection_size(g.neighbors(u), g.neighbors(v));
}

std::uint64_t walk_count(const Graph& g, NodeId u, NodeId v, int k) {
  require_distinct(u, v, "walk_count");
  if (k == 2) return common_neighbor_count(g, u, v);
  if (k != 3) throw InputError("walk_count supports k in {2,3}, got " + std::to_string(k));
  // Walks u-a-b-v: for each a adjacent to u, b ranges over N(a) ∩ N(v).
  const auto nv = g.neighbors(v);
  std::uint64_t total = 0;
  for (NodeId a : g.neighbors(u)) total += sorted_intersection_size(g.neighbors(a), nv);
  return total;
}

namespace {

// Per-thread visit marks reused across calls; an epoch bump invalidates them.
struct BfsScratch {
  std::vector<std::uint64_t> mark[2];
  std::vector<std::uint32_t> depth[2];
  std::uint64_t epoch = 0;

  void prepare(std::size_t n) {
    for (int s = 0; s < 2; ++s) {
      if (mark[s].size() < n) {
        mark[s].assign(n, 0);
        depth[s].assign(n, 0);
      }
    }
    ++epoch;
  }
};

}  // namespace

std::size_t distance_excluding_direct_edge(const Graph& g, NodeId u, NodeId v) {
  require_distinct(u, v, "distance_excluding_direct_edge");
  g.neighbors(u);  // range checks
  g.neighbors(v);
  const std::size_t n = g.num_nodes();

  thread_local BfsScratch scratch;
  scratch.prepare(n);
  const auto epoch = scratch.epoch;
  auto& mark = scratch.mark;
  auto& depth = scratch.depth;

  // Bidirectional BFS, expanding whole layers of the smaller frontier.
  std::vector<NodeId> frontier[2] = {{u}, {v}};
  const NodeId root[2] = {u, v};
  std::uint32_t level[2] = {0, 0};
  for (int s = 0; s < 2; ++s) {
    mark[s][root[s]] = epoch;
    depth[s][root[s]] = 0;
  }
  std::vector<NodeId> next;
  while (!frontier[0].empty() && !frontier[1].empty()) {
    const int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    const int other = 1 - s;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    next.clear();
    for (NodeId x : frontier[s]) {
      for (NodeId y : g.neighbors(x)) {
        if ((x == u && y == v) || (x == v && y == u)) continue;  // masked direct edge
        if (mark[other][y] == epoch) {
          best = std::min<std::size_t>(best, std::size_t{level[s]} + 1 + depth[other][y]);
        }
        if (mark[s][y] == epoch) continue;
        mark[s][y] = epoch;
        depth[s][y] = level[s] + 1;
        next.push_back(y);
      }
    }
    if (best != std::numeric_limits<std::size_t>::max()) return best;
    ++level[s];
    frontier[s].swap(next);
  }
  return n;
}

NodeId NodeIndex::intern(std::string_view external) {
  std::string key(external);
  auto it = lookup_.find(key);
  if (it != lookup_.end()) return it->second;
  const auto id = static_cast<NodeId>(external_.size());
  lookup_.emplace(key, id);
  external_.push_back(std::move(key));
  return id;
}

std::optional<NodeId> NodeIndex::find(std::string_view external) const {
  auto it = lookup_.find(std::string(external));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

NodeIndex NodeIndex::from_externals(std::vector<std::string> externals) {
  NodeIndex index;
  for (auto& e : externals) {
    if (index.find(e)) throw InputError("duplicate external id '" + e + "' in remap table");
    index.intern(e);
  }
  return index;
}

namespace {

template <typename OnPair>
void for_each_edge_line(const std::filesystem::path& path, OnPair&& on_pair) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split(body, "\t");
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw InputError(detail::where(path, line_no) + "expected 'u<TAB>v', got '" +
                       std::string(body) + "'");
    }
    on_pair(fields[0], fields[1], line_no);
  }
}

}  // namespace

std::vector<Edge> read_edge_list(const std::filesystem::path& path, NodeIndex& index) {
  std::vector<Edge> edges;
  for_each_edge_line(path, [&](std::string_view a, std::string_view b, std::size_t) {
    const NodeId u = index.intern(a);
    const NodeId v = index.intern(b);
    edges.emplace_back(u, v);
  });
  return edges;
}

std::vector<Edge> read_internal_edge_list(const std::filesystem::path& path,
                                          std::size_t num_nodes) {
  std::vector<Edge> edges;
  for_each_edge_line(path, [&](std::string_view a, std::string_view b, std::size_t line_no) {
    NodeId u = 0;
    NodeId v = 0;
    if (!detail::parse_number(a, u) || !detail::parse_number(b, v)) {
      throw InputError(detail::where(path, line_no) + "node ids must be decimal integers");
    }
    if (u >= num_nodes || v >= num_nodes) {
      throw InputError(detail::where(path, line_no) + "pair (" + std::to_string(u) + "," +
                       std::to_string(v) + ") out of range for " +
                       std::to_string(num_nodes) + " nodes");
    }
    edges.emplace_back(u, v);
  });
  return edges;
}

void write_edge_list(const std::filesystem::path& path, std::span<const Edge> edges) {
  auto out = detail::open_output(path);
  for (const auto& [u, v] : edges) out << u << '\t' << v << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_remap_csv(const std::filesystem::path& path, const NodeIndex& index) {
  auto out = detail::open_output(path);
  out << "external_id,internal_id\n";
  for (std::size_t i = 0; i < index.size(); ++i) out << index.external(NodeId(i)) << ',' << i << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

NodeIndex read_remap_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<NodeId, std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || line_no == 1) continue;
    const auto fields = detail::split(body, ",");
    NodeId internal = 0;
    if (fields.size() != 2 || !detail::parse_number(fields[1], internal)) {
      throw InputError(detail::where(path, line_no) + "expected 'external_id,internal_id'");
    }
    rows.emplace_back(internal, std::string(fields[0]));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::string> externals;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw InputError(path.string() + ": internal ids are not dense 0..n-1");
    externals.push_back(std::move(rows[i].second));
  }
  return NodeIndex::from_externals(std::move(externals));
}

}  // namespace proxilink
