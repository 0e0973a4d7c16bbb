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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace proxilink {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph over dense ids 0..n-1. Adjacency is
/// stored in CSR form with each neighbor run strictly ascending.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph, dropping self-loops and collapsing duplicate or
  /// reversed edges. Throws InputError when an id is >= num_nodes.
  static Graph build(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  /// Sorted neighbors of u. Throws InputError when u is out of range.
  std::span<const NodeId> neighbors(NodeId u) const;
  std::size_t degree(NodeId u) const { return neighbors(u).size(); }

  bool has_edge(NodeId u, NodeId v) const;

  /// Every undirected edge once, as (lo, hi), in ascending order.
  std::vector<Edge> edges() const;

  std::size_t max_degree() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(NodeId u) const;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Number of walks of length k (2 or 3) between distinct nodes u and v;
/// the (u,v) entry of the k-th adjacency-matrix power.
std::uint64_t walk_count(const Graph& g, NodeId u, NodeId v, int k);

/// |N(u) ∩ N(v)| by merging the two sorted neighbor runs.
std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v);

/// Shortest-path hop count between distinct u and v with the direct edge
/// (u,v) masked out. Unreachable pairs return g.num_nodes().
std::size_t distance_excluding_direct_edge(const Graph& g, NodeId u, NodeId v);

/// Maps arbitrary external node ids (kept as strings) onto dense internal
/// ids in order of first appearance.
class NodeIndex {
 public:
  NodeId intern(std::string_view external);
  std::optional<NodeId> find(std::string_view external) const;
  const std::string& external(NodeId id) const { return external_.at(id); }
  std::span<const std::string> externals() const { return external_; }
  std::size_t size() const { return external_.size(); }

  static NodeIndex from_externals(std::vector<std::string> externals);

 private:
  std::unordered_map<std::string, NodeId> lookup_;
  std::vector<std::string> external_;
};

/// Reads "u<TAB>v" lines ('#' comments and blank lines skipped), interning
/// external ids into `index`. Errors name the offending line.
std::vector<Edge> read_edge_list(const std::filesystem::path& path, NodeIndex& index);

/// Reads an edge list whose ids are already dense internal ids, validating
/// them against num_nodes.
std::vector<Edge> read_internal_edge_list(const std::filesystem::path& path,
                                          std::size_t num_nodes);

void write_edge_list(const std::filesystem::path& path, std::span<const Edge> edges);

/// Two-column CSV "external_id,internal_id".
void write_remap_csv(const std::filesystem::path& path, const NodeIndex& index);
NodeIndex read_remap_csv(const std::filesystem::path& path);

}  // namespace proxilink
