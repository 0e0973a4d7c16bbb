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

#include "proxilink/structural.hpp"

#include <cmath>

#include "proxilink/error.hpp"
#include "proxilink/parallel.hpp"

namespace proxilink {

namespace {

struct PairCounts {
  double degree_u = 0;
  double degree_v = 0;
  double common = 0;  // |N(u) ∩ N(v)|
  double union_size = 0;
};

PairCounts pair_counts(const Graph& g, NodeId u, NodeId v) {
  if (u == v) throw InputError("structural indices are defined on distinct node pairs");
  PairCounts c;
  c.degree_u = static_cast<double>(g.degree(u));
  c.degree_v = static_cast<double>(g.degree(v));
  c.common = static_cast<double>(common_neighbor_count(g, u, v));
  c.union_size = c.degree_u + c.degree_v - c.common;
  return c;
}

double numerator(const Graph& g, NodeId u, NodeId v, const PairCounts& c, int order) {
  if (order == 2) return c.common;
  if (order == 3) return static_cast<double>(walk_count(g, u, v, 3));
  throw InputError("index order must be 2 or 3, got " + std::to_string(order));
}

double jaccard_ratio(double num, const PairCounts& c) {
  return c.union_size > 0 ? num / c.union_size : 0.0;
}

double salton_ratio(double num, const PairCounts& c) {
  const double denom = c.degree_u * c.degree_v;
  return denom > 0 ? num / std::sqrt(denom) : 0.0;
}

double sorensen_ratio(double num, const PairCounts& c) {
  const double denom = c.degree_u + c.degree_v;
  return denom > 0 ? 2.0 * num / denom : 0.0;
}

}  // namespace

double jaccard(const Graph& g, NodeId u, NodeId v, int order) {
  const auto c = pair_counts(g, u, v);
  return jaccard_ratio(numerator(g, u, v, c, order), c);
}

double salton(const Graph& g, NodeId u, NodeId v, int order) {
  const auto c = pair_counts(g, u, v);
  return salton_ratio(numerator(g, u, v, c, order), c);
}

double sorensen(const Graph& g, NodeId u, NodeId v, int order) {
  const auto c = pair_counts(g, u, v);
  return sorensen_ratio(numerator(g, u, v, c, order), c);
}

double adamic_adar(const Graph& g, NodeId u, NodeId v) {
  if (u == v) throw InputError("adamic_adar is defined on distinct node pairs");
  const auto nu = g.neighbors(u);
  const auto nv = g.neighbors(v);
  double total = 0.0;
  auto i = nu.begin();
  auto j = nv.begin();
  while (i != nu.end() && j != nv.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      // A common neighbor of two distinct nodes has degree >= 2.
      total += 1.0 / std::log(static_cast<double>(g.degree(*i)));
      ++i;
      ++j;
    }
  }
  return total;
}

StructuralVector structural_vector(const Graph& g, NodeId u, NodeId v) {
  const auto c = pair_counts(g, u, v);
  const double path3 = static_cast<double>(walk_count(g, u, v, 3));
  StructuralVector out;
  out[StructuralIndex::kGraphDistance] =
      static_cast<double>(distance_excluding_direct_edge(g, u, v));
  out[StructuralIndex::kPath2] = c.common;
  out[StructuralIndex::kPath3] = path3;
  out[StructuralIndex::kAdamicAdar] = adamic_adar(g, u, v);
  out[StructuralIndex::kJaccard] = jaccard_ratio(c.common, c);
  out[StructuralIndex::kSalton] = salton_ratio(c.common, c);
  out[StructuralIndex::kSorensen] = sorensen_ratio(c.common, c);
  out[StructuralIndex::kJaccard3] = jaccard_ratio(path3, c);
  out[StructuralIndex::kSalton3] = salton_ratio(path3, c);
  out[StructuralIndex::kSorensen3] = sorensen_ratio(path3, c);
  return out;
}

StructuralVector structural_vector_without_edge(const Graph& g, NodeId u, NodeId v) {
  if (u == v || !g.has_edge(u, v)) return structural_vector(g, u, v);
  // Dropping (u,v) lowers both degrees by one, leaves common neighbors and
  // their degrees alone, and removes the deg(u) + deg(v) - 1 length-3 walks
  // that traverse the edge.
  PairCounts c = pair_counts(g, u, v);
  const double path3 =
      static_cast<double>(walk_count(g, u, v, 3)) - c.degree_u - c.degree_v + 1.0;
  c.degree_u -= 1.0;
  c.degree_v -= 1.0;
  c.union_size = c.degree_u + c.degree_v - c.common;
  StructuralVector out;
  out[StructuralIndex::kGraphDistance] =
      static_cast<double>(distance_excluding_direct_edge(g, u, v));
  out[StructuralIndex::kPath2] = c.common;
  out[StructuralIndex::kPath3] = path3;
  out[StructuralIndex::kAdamicAdar] = adamic_adar(g, u, v);
  out[StructuralIndex::kJaccard] = jaccard_ratio(c.common, c);
  out[StructuralIndex::kSalton] = salton_ratio(c.common, c);
  out[StructuralIndex::kSorensen] = sorensen_ratio(c.common, c);
  out[StructuralIndex::kJaccard3] = jaccard_ratio(path3, c);
  out[StructuralIndex::kSalton3] = salton_ratio(path3, c);
  out[StructuralIndex::kSorensen3] = sorensen_ratio(path3, c);
  return out;
}

std::vector<StructuralVector> structural_batch(const Graph& g, std::span<const Edge> pairs,
                                               std::size_t workers) {
  std::vector<StructuralVector> out(pairs.size());
  parallel_for_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = structural_vector(g, pairs[i].first, pairs[i].second);
    }
  });
  return out;
}

}  // namespace proxilink
