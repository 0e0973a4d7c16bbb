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

#include "proxilink/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "proxilink/error.hpp"
#include "proxilink/parallel.hpp"
#include "rng.hpp"
#include "text_io.hpp"

namespace proxilink {

namespace {

constexpr std::uint64_t kPermutationStream = 1;
constexpr std::uint64_t kNegativeStream = 2;

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

}  // namespace

void SplitRatios::validate() const {
  if (!(train > 0) || !(valid > 0) || !(test > 0)) {
    throw ConfigError("split ratios must all be > 0");
  }
  if (std::abs(train + valid + test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
}

std::array<std::size_t, 3> largest_remainder_sizes(std::size_t n, const SplitRatios& ratios) {
  ratios.validate();
  const std::array<double, 3> quota = {ratios.train * double(n), ratios.valid * double(n),
                                       ratios.test * double(n)};
  std::array<std::size_t, 3> sizes{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(quota[i]));
    assigned += sizes[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return quota[a] - std::floor(quota[a]) > quota[b] - std::floor(quota[b]);
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
  return sizes;
}

DatasetSplit split_edges(std::span<const Edge> edges, const SplitRatios& ratios,
                         std::uint64_t seed) {
  if (edges.size() < 3) {
    throw InputError("need at least 3 edges to split, got " + std::to_string(edges.size()));
  }
  const auto sizes = largest_remainder_sizes(edges.size(), ratios);
  std::vector<Edge> perm(edges.begin(), edges.end());
  auto rng = detail::make_engine(seed, kPermutationStream);
  detail::shuffle(perm.begin(), perm.end(), rng);

  DatasetSplit split;
  split.seed = seed;
  split.ratios = ratios;
  auto cut = perm.begin();
  split.train_pos.assign(cut, cut + std::ptrdiff_t(sizes[0]));
  cut += std::ptrdiff_t(sizes[0]);
  split.valid_pos.assign(cut, cut + std::ptrdiff_t(sizes[1]));
  cut += std::ptrdiff_t(sizes[1]);
  split.test_pos.assign(cut, perm.end());
  return split;
}

std::vector<Edge> sample_negatives(std::size_t num_nodes, std::span<const Edge> forbidden,
                                   std::size_t count, std::uint64_t seed) {
  std::unordered_set<std::uint64_t> blocked;
  for (const auto& [u, v] : forbidden) {
    if (u != v) blocked.insert(pair_key(u, v));
  }
  const std::uint64_t total = num_nodes < 2 ? 0 : std::uint64_t(num_nodes) * (num_nodes - 1) / 2;
  const std::uint64_t available = total - std::min<std::uint64_t>(total, blocked.size());
  if (count > available) {
    throw InputError("cannot sample " + std::to_string(count) + " negative pairs: only " +
                     std::to_string(available) + " non-edges exist");
  }
  auto rng = detail::make_engine(seed, kNegativeStream);
  std::vector<Edge> out;
  out.reserve(count);

  constexpr std::uint64_t kEnumerateLimit = 20'000'000;
  if (2 * std::uint64_t(count) > available && total <= kEnumerateLimit) {
    // Dense request: enumerate every non-edge and take a seeded prefix.
    std::vector<Edge> pool;
    pool.reserve(available);
    for (NodeId u = 0; u < num_nodes; ++u) {
      for (NodeId v = u + 1; v < num_nodes; ++v) {
        if (!blocked.contains(pair_key(u, v))) pool.emplace_back(u, v);
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + detail::bounded(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  std::unordered_set<std::uint64_t> chosen;
  while (out.size() < count) {
    auto u = static_cast<NodeId>(detail::bounded(rng, num_nodes));
    auto v = static_cast<NodeId>(detail::bounded(rng, num_nodes));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const auto key = pair_key(u, v);
    if (blocked.contains(key) || !chosen.insert(key).second) continue;
    out.emplace_back(u, v);
  }
  return out;
}

void fill_negatives(DatasetSplit& split, std::size_t num_nodes, NegativeScope scope) {
  const std::size_t sizes[3] = {split.train_pos.size(), split.valid_pos.size(),
                                split.test_pos.size()};
  std::vector<Edge>* targets[3] = {&split.train_neg, &split.valid_neg, &split.test_neg};
  if (scope == NegativeScope::kAllPositives) {
    std::vector<Edge> forbidden;
    forbidden.reserve(sizes[0] + sizes[1] + sizes[2]);
    for (const auto* set : {&split.train_pos, &split.valid_pos, &split.test_pos}) {
      forbidden.insert(forbidden.end(), set->begin(), set->end());
    }
    const auto pool =
        sample_negatives(num_nodes, forbidden, sizes[0] + sizes[1] + sizes[2], split.seed);
    auto it = pool.begin();
    for (int i = 0; i < 3; ++i) {
      targets[i]->assign(it, it + std::ptrdiff_t(sizes[i]));
      it += std::ptrdiff_t(sizes[i]);
    }
    return;
  }
  const std::vector<Edge>* positives[3] = {&split.train_pos, &split.valid_pos, &split.test_pos};
  for (int i = 0; i < 3; ++i) {
    *targets[i] = sample_negatives(num_nodes, *positives[i], sizes[i],
                                   split.seed * 3 + std::uint64_t(i) + 1);
  }
}

Graph observed_graph(std::size_t num_nodes, const DatasetSplit& split) {
  return Graph::build(num_nodes, split.train_pos);
}

void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m) {
  auto out = detail::open_output(path);
  out << "u,v,label";
  for (const auto& name : m.names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.pairs[r].first << ',' << m.pairs[r].second << ',' << int(m.labels[r]);
    for (double x : m.row(r)) out << ',' << detail::format_double(x);
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  FeatureMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto fields = detail::split(body, ",");
    if (header) {
      if (fields.size() < 3 || fields[0] != "u" || fields[1] != "v" || fields[2] != "label") {
        throw InputError(detail::where(path, line_no) + "header must start with 'u,v,label'");
      }
      for (std::size_t i = 3; i < fields.size(); ++i) m.names.emplace_back(fields[i]);
      header = false;
      continue;
    }
    if (fields.size() != m.names.size() + 3) {
      throw InputError(detail::where(path, line_no) + "expected " +
                       std::to_string(m.names.size() + 3) + " fields");
    }
    Edge pair;
    unsigned label = 0;
    if (!detail::parse_number(fields[0], pair.first) ||
        !detail::parse_number(fields[1], pair.second) || !detail::parse_number(fields[2], label) ||
        label > 1) {
      throw InputError(detail::where(path, line_no) + "malformed pair or label");
    }
    m.pairs.push_back(pair);
    m.labels.push_back(static_cast<std::uint8_t>(label));
    for (std::size_t i = 3; i < fields.size(); ++i) {
      double x = 0;
      if (!detail::parse_number(fields[i], x)) {
        throw InputError(detail::where(path, line_no) + "non-numeric value '" +
                         std::string(fields[i]) + "'");
      }
      m.values.push_back(x);
    }
  }
  if (header) throw InputError(path.string() + ": empty feature file");
  return m;
}

std::vector<StructuralIndex> structural_columns(Profile profile) {
  using S = StructuralIndex;
  switch (profile) {
    case Profile::kBinary:
    case Profile::kReal: {
      std::vector<S> all;
      for (std::size_t i = 0; i < kNumStructuralIndices; ++i) all.push_back(S(i));
      return all;
    }
    case Profile::kPpa:
      return {S::kJaccard, S::kSalton, S::kSorensen, S::kAdamicAdar, S::kPath2,
              S::kGraphDistance};
    case Profile::kCollab:
      return {};
  }
  return {};
}

std::string_view feature_groups_name(FeatureGroups g) {
  switch (g) {
    case FeatureGroups::kAll: return "all";
    case FeatureGroups::kStructural: return "structural";
    case FeatureGroups::kDomain: return "domain";
  }
  return "all";
}

FeatureGroups parse_feature_groups(std::string_view name) {
  if (name == "all") return FeatureGroups::kAll;
  if (name == "structural") return FeatureGroups::kStructural;
  if (name == "domain") return FeatureGroups::kDomain;
  throw ConfigError("feature groups must be 'all', 'structural' or 'domain', got '" + std::string(name) + "'");
}

namespace {

bool with_structural(const FeatureOptions& o) { return o.groups != FeatureGroups::kDomain; }
bool with_domain(const FeatureOptions& o) { return o.groups != FeatureGroups::kStructural; }

}  // namespace

std::vector<std::string> feature_names(const NodeAttributes& attrs, const FeatureOptions& options) {
  std::vector<std::string> names;
  if (with_structural(options)) {
    for (auto s : structural_columns(options.profile)) {
      names.emplace_back(kStructuralNames[static_cast<std::size_t>(s)]);
    }
  }
  if (with_domain(options)) {
    for (auto& d : domain_names(attrs, options.profile, options.domain)) names.push_back(std::move(d));
  }
  return names;
}

PairFeaturizer::PairFeaturizer(const Graph& observed, const NodeAttributes& attrs,
                               FeatureOptions options)
    : graph_(observed),
      attrs_(attrs),
      options_(options),
      structural_(with_structural(options) ? structural_columns(options.profile)
                                           : std::vector<StructuralIndex>{}),
      names_(feature_names(attrs, options)) {
  if (options.profile == Profile::kCollab) {
    throw ConfigError("the collab profile is featurized from a temporal graph");
  }
  if (attrs.num_nodes != observed.num_nodes()) {
    throw ConfigError("attribute node count " + std::to_string(attrs.num_nodes) +
                      " does not match graph node count " + std::to_string(observed.num_nodes()));
  }
}

void PairFeaturizer::append(std::span<const Edge> pairs, std::uint8_t label, std::size_t workers,
                            FeatureMatrix& out) const {
  const std::size_t cols = names_.size();
  const std::size_t base = out.rows();
  out.names = names_;
  out.pairs.insert(out.pairs.end(), pairs.begin(), pairs.end());
  out.labels.insert(out.labels.end(), pairs.size(), label);
  out.values.resize((base + pairs.size()) * cols);
  parallel_for_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto [u, v] = pairs[i];
      double* dst = out.values.data() + (base + i) * cols;
      if (!structural_.empty()) {
        const auto sv = options_.mask_target_edge ? structural_vector_without_edge(graph_, u, v)
                                                  : structural_vector(graph_, u, v);
        for (auto s : structural_) *dst++ = sv[s];
      }
      if (with_domain(options_)) {
        for (double d : domain_vector(attrs_, u, v, options_.profile, options_.domain)) *dst++ = d;
      }
    }
  });
}

namespace {

void require_absent(const Graph& g, std::span<const Edge> pairs, const char* which) {
  for (const auto& [u, v] : pairs) {
    if (g.has_edge(u, v)) {
      throw InputError(std::string(which) + " positive (" + std::to_string(u) + "," +
                       std::to_string(v) + ") is an edge of the observed graph");
    }
  }
}

}  // namespace

AssembledFeatures assemble(std::size_t num_nodes, const NodeAttributes& attrs,
                           const DatasetSplit& split, const FeatureOptions& options,
                           const AssembleOptions& assemble_options) {
  attrs.validate();
  const Graph observed = observed_graph(num_nodes, split);
  require_absent(observed, split.valid_pos, "validation");
  require_absent(observed, split.test_pos, "test");

  AssembledFeatures out;
  const std::size_t workers = assemble_options.workers;
  PairFeaturizer train_featurizer(observed, attrs, options);
  train_featurizer.append(split.train_pos, 1, workers, out.train);
  train_featurizer.append(split.train_neg, 0, workers, out.train);
  train_featurizer.append(split.valid_pos, 1, workers, out.valid);
  train_featurizer.append(split.valid_neg, 0, workers, out.valid);

  if (assemble_options.valid_edges_in_test_graph) {
    std::vector<Edge> edges = split.train_pos;
    edges.insert(edges.end(), split.valid_pos.begin(), split.valid_pos.end());
    const Graph extended = Graph::build(num_nodes, edges);
    require_absent(extended, split.test_pos, "test");
    PairFeaturizer test_featurizer(extended, attrs, options);
    test_featurizer.append(split.test_pos, 1, workers, out.test);
    test_featurizer.append(split.test_neg, 0, workers, out.test);
  } else {
    train_featurizer.append(split.test_pos, 1, workers, out.test);
    train_featurizer.append(split.test_neg, 0, workers, out.test);
  }
  return out;
}

DatasetSplit temporal_split(const TemporalGraph& tg, const CollabConfig& config) {
  std::unordered_set<std::uint64_t> seen[3];
  DatasetSplit split;
  std::vector<Edge>* targets[3] = {&split.train_pos, &split.valid_pos, &split.test_pos};
  for (const auto& r : tg.records()) {
    int which = -1;
    if (r.year <= config.train_last_year) {
      which = 0;
    } else if (r.year == config.valid_year) {
      which = 1;
    } else if (r.year == config.test_year) {
      which = 2;
    }
    if (which < 0) continue;
    if (seen[which].insert(pair_key(r.u, r.v)).second) targets[which]->emplace_back(r.u, r.v);
  }
  for (auto* t : targets) std::sort(t->begin(), t->end());
  return split;
}

AssembledFeatures assemble_collab(const TemporalGraph& tg, const NodeAttributes& attrs,
                                  const DatasetSplit& split, const CollabConfig& config,
                                  std::size_t workers) {
  const CollabFeaturizer featurizer(tg, attrs, config);
  const auto names = featurizer.names();
  auto build = [&](const std::vector<Edge>& pos, const std::vector<Edge>& neg) {
    FeatureMatrix m;
    m.names = names;
    for (const auto* set : {&pos, &neg}) {
      const auto rows = featurizer.batch(*set, workers);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        m.pairs.push_back((*set)[i]);
        m.labels.push_back(set == &pos ? 1 : 0);
        m.values.insert(m.values.end(), rows[i].begin(), rows[i].end());
      }
    }
    return m;
  };
  return {build(split.train_pos, split.train_neg), build(split.valid_pos, split.valid_neg),
          build(split.test_pos, split.test_neg)};
}

}  // namespace proxilink
