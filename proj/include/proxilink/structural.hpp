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

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "proxilink/graph.hpp"

namespace proxilink {

/// Positions inside StructuralVector::values.
enum class StructuralIndex : std::size_t {
  kGraphDistance = 0,
  kPath2,
  kPath3,
  kAdamicAdar,
  kJaccard,
  kSalton,
  kSorensen,
  kJaccard3,
  kSalton3,
  kSorensen3,
};

inline constexpr std::size_t kNumStructuralIndices = 10;

/// Canonical column names, in StructuralIndex order.
inline constexpr std::array<std::string_view, kNumStructuralIndices> kStructuralNames = {
    "graph_distance", "path2",   "path3",    "adamic_adar", "jaccard",
    "salton",         "sorensen", "jaccard3", "salton3",     "sorensen3"};

struct StructuralVector {
  std::array<double, kNumStructuralIndices> values{};

  double operator[](StructuralIndex i) const { return values[static_cast<std::size_t>(i)]; }
  double& operator[](StructuralIndex i) { return values[static_cast<std::size_t>(i)]; }
};

// Ratio indices. `order` 2 uses the common-neighbor count as numerator,
// order 3 the length-3 walk count. Zero denominators yield 0.
double jaccard(const Graph& g, NodeId u, NodeId v, int order);
double salton(const Graph& g, NodeId u, NodeId v, int order);
double sorensen(const Graph& g, NodeId u, NodeId v, int order);

/// Sum of 1/ln(deg(w)) over common neighbors w.
double adamic_adar(const Graph& g, NodeId u, NodeId v);

/// All ten indices for one pair, sharing the intersection and walk counts.
StructuralVector structural_vector(const Graph& g, NodeId u, NodeId v);

/// structural_vector over a batch of pairs; out[i] corresponds to pairs[i]
/// for any worker count.
/// structural_vector on g with the edge (u,v) removed, without copying the
/// graph. Equals structural_vector when u and v are not adjacent.
StructuralVector structural_vector_without_edge(const Graph& g, NodeId u, NodeId v);

std::vector<StructuralVector> structural_batch(const Graph& g, std::span<const Edge> pairs,
                                               std::size_t workers);

}  // namespace proxilink
