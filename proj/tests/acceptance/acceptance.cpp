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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "proxilink/dataset.hpp"
#include "proxilink/error.hpp"
#include "proxilink/gbdt.hpp"
#include "proxilink/logistic.hpp"
#include "proxilink/metrics.hpp"
#include "proxilink/pipeline.hpp"
#include "proxilink/structural.hpp"
#include "proxilink/temporal.hpp"

using namespace proxilink;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::kPass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::kFail, std::move(d)}; }
Outcome skip(std::string d) { return {Verdict::kSkip, std::move(d)}; }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("proxilink_accept_" + name);
  fs::remove_all(dir);
  return dir;
}

// 1 -------------------------------------------------------------------------

Outcome structural_oracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> prob(0.1, 0.5);
  std::size_t graphs = 0, pairs = 0;
  for (; graphs < 500; ++graphs) {
    const std::size_t n = 2 + rng() % 15;
    const auto edges = oracle::random_edges(n, prob(rng), rng);
    const auto g = Graph::build(n, edges);
    const auto a = oracle::adjacency(n, edges);
    const auto a3 = oracle::power(a, 3);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        ++pairs;
        const auto got = structural_vector(g, u, v);
        const auto want = oracle::structural(a, a3, u, v);
        for (std::size_t i = 0; i < kNumStructuralIndices; ++i) {
          const bool integer = i < 3;
          const double diff = std::abs(got.values[i] - want[i]);
          if ((integer && got.values[i] != want[i]) || (!integer && diff > 1e-12)) {
            return fail(std::string(kStructuralNames[i]) + " mismatch on graph " + std::to_string(graphs) +
                        " pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  const auto detail = std::to_string(graphs) + " graphs, " + std::to_string(pairs) + " pairs, " +
                      fmt("%.2f s", secs);
  return secs < 60 ? pass(detail) : fail(detail + " exceeds 60 s");
}

// 2 -------------------------------------------------------------------------

Outcome temporal_oracles() {
  constexpr YearWindow windows[] = {{1963, 2017}, {2007, 2017}, {2012, 2017}};
  std::mt19937_64 rng(777);
  std::size_t graphs = 0, checks = 0;
  for (; graphs < 200; ++graphs) {
    const std::size_t n = 2 + rng() % 11;
    const auto records = oracle::random_records(n, rng, 1960, 2017);
    const auto tg = TemporalGraph::build(n, records);
    for (const auto& w : windows) {
      const WindowView view(tg, w);
      const oracle::Windowed o(n, records, w.first, w.last);
      const auto adj = o.adjacency();
      for (NodeId u = 0; u < n; ++u) {
        if (activity(view, u) != o.activity(u)) return fail("activity mismatch");
        for (NodeId v = 0; v < n; ++v) {
          if (u == v) continue;
          ++checks;
          const auto wi = weighted_indices(view, u, v);
          const bool ok = view.weight(u, v) == o.weight(u, v) &&
                          common_collaborators(view, u, v) == o.common(u, v) &&
                          preferential_attachment(view, u, v) == o.activity(u) * o.activity(v) &&
                          wi.adamic_adar == o.w_adamic_adar(u, v) && wi.jaccard == o.w_jaccard(u, v) &&
                          wi.salton == o.w_salton(u, v) &&
                          distance_excluding_direct_edge(view.graph(), u, v) ==
                              oracle::masked_distance(adj, u, v);
          if (!ok) {
            return fail("windowed index mismatch on graph " + std::to_string(graphs) + " window " +
                        std::to_string(w.first) + "-" + std::to_string(w.last));
          }
        }
      }
    }
  }
  return pass(std::to_string(graphs) + " graphs, " + std::to_string(checks) + " pair-window checks");
}

// 3 -------------------------------------------------------------------------

Outcome feature_counts() {
  std::mt19937_64 rng(3);
  const std::pair<std::uint32_t, std::size_t> table[] = {{3, 16}, {5, 18}, {6, 19},
                                                         {7, 20}, {8, 21}, {10, 23}};
  std::string seen;
  for (auto [m, expected] : table) {
    const std::size_t n = m + 4;
    NodeAttributes attrs;
    attrs.num_nodes = n;
    std::vector<std::uint8_t> dense(n * 11);
    for (auto& x : dense) x = rng() % 2;
    attrs.binary = BinaryBlock::from_dense(n, 11, dense);
    attrs.classes = ClassBlock{{}, m};
    for (std::size_t i = 0; i < n; ++i) attrs.classes->labels.push_back(std::uint32_t(i % m));
    const auto g = Graph::build(n, oracle::random_edges(n, 0.4, rng));
    const PairFeaturizer f(g, attrs, FeatureOptions{});
    FeatureMatrix rows;
    f.append(std::vector<Edge>{{0, 1}, {2, 3}}, 1, 1, rows);
    if (rows.cols() != expected || rows.values.size() != 2 * expected) {
      return fail("m=" + std::to_string(m) + " gave " + std::to_string(rows.cols()));
    }
    seen += std::to_string(m) + "->" + std::to_string(rows.cols()) + " ";
  }
  NodeAttributes classes_only;
  classes_only.num_nodes = 4;
  classes_only.classes = ClassBlock{{0, 1, 2, 1}, 3};
  FeatureOptions ppa;
  ppa.profile = Profile::kPpa;
  const auto ppa_width = feature_names(classes_only, ppa).size();

  NodeAttributes emb;
  emb.num_nodes = 3;
  emb.real = RealBlock{3, 2, {0, 1, 1, 0, 1, 1}};
  const auto tg = TemporalGraph::build(3, {{0, 1, 2010, 1}, {1, 2, 2015, 2}});
  const CollabFeaturizer collab(tg, emb, CollabConfig{});
  const auto collab_width = collab.features(0, 2).size();
  seen += "ppa=" + std::to_string(ppa_width) + " collab=" + std::to_string(collab_width);
  if (ppa_width != 9 || collab_width != 28 || collab.names().size() != 28) return fail(seen);
  return pass(seen);
}

// 4 -------------------------------------------------------------------------

Outcome metric_units() {
  const double a = auc(std::vector<double>{0.9, 0.8, 0.7, 0.6}, std::vector<std::uint8_t>{1, 0, 1, 0});
  const std::vector<double> pos = {0.9, 0.5}, neg = {0.7, 0.3, 0.1};
  const double h1 = hits_at_k(pos, neg, 1), h2 = hits_at_k(pos, neg, 2);
  const double k3 = transitivity_ratio(Graph::build(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}));
  const double path3 = transitivity_ratio(Graph::build(3, std::vector<Edge>{{0, 1}, {1, 2}}));
  const double g0 = transitivity_ratio(Graph::build(5, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}}));
  const auto detail = fmt("auc=%.17g hits@1=%.17g hits@2=%.17g", a, h1, h2) +
                      fmt(" T(K3)=%.17g T(P3)=%.17g T(G0)=%.17g", k3, path3, g0);
  const bool ok = a == 0.75 && h1 == 0.5 && h2 == 1.0 && k3 == 1.0 && path3 == 0.0 && g0 == 0.5;
  return ok ? pass(detail) : fail(detail);
}

// 5 -------------------------------------------------------------------------

struct Synthetic {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  std::vector<std::string> names;
};

Synthetic draw(std::size_t rows, std::size_t cols, std::uint64_t seed, bool shuffle_labels) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  Synthetic s;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) s.x.push_back(u(rng));
    s.y.push_back(s.x[i * cols] + 0.5 * s.x[i * cols + 1] > 0.75 ? 1 : 0);
  }
  if (shuffle_labels) std::shuffle(s.y.begin(), s.y.end(), rng);
  for (std::size_t j = 0; j < cols; ++j) s.names.push_back("x" + std::to_string(j));
  return s;
}

Outcome classifier_sanity() {
  Hyperparams hp = preset("auc");
  hp.n_estimators = 200;
  hp.learning_rate = 0.3;
  hp.lambda = 1.0;

  // Separable with a margin: label from a single coordinate.
  auto margin = [](std::size_t rows, std::uint64_t seed) {
    auto s = draw(rows, 3, seed, false);
    for (std::size_t i = 0; i < rows; ++i) {
      const double x0 = s.x[i * 3];
      s.x[i * 3] = x0 < 0.5 ? x0 * 0.8 : 0.6 + x0 * 0.8;
      s.y[i] = x0 < 0.5 ? 0 : 1;
    }
    return s;
  };
  const auto tr = margin(600, 1), te = margin(400, 2);
  const double sep = auc(train_gbdt(tr.x, 3, tr.y, tr.names, hp).predict(te.x, 3), te.y);
  const double sep_lr = auc(train_logistic(tr.x, 3, tr.y, 1e-4).predict(te.x, 400), te.y);

  double lo = 1, hi = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = hp;
    h.seed = seed;
    h.n_estimators = 100;
    const auto a = draw(600, 4, 100 + seed, true), b = draw(600, 4, 200 + seed, true);
    const double v = auc(train_gbdt(a.x, 4, a.y, a.names, h).predict(b.x, 4), b.y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  // Logistic gradient against central differences.
  const auto lg = draw(200, 4, 5, false);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> params(5);
    for (auto& p : params) p = normal(rng);
    const auto obj = logistic_objective(lg.x, 4, lg.y, 0.3, params);
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double h = 1e-6;
      auto plus = params, minus = params;
      plus[k] += h;
      minus[k] -= h;
      const double fd = (logistic_objective(lg.x, 4, lg.y, 0.3, plus).loss -
                         logistic_objective(lg.x, 4, lg.y, 0.3, minus).loss) / (2 * h);
      worst = std::max(worst, std::abs(obj.gradient[k] - fd) / std::max(1e-8, std::abs(fd)));
    }
  }

  auto dump_hp = hp;
  dump_hp.subsample = 0.7;
  dump_hp.colsample_bytree = 0.6;
  dump_hp.seed = 1234;
  dump_hp.n_estimators = 50;
  const auto d = draw(500, 5, 6, false);
  const auto dump1 = train_gbdt(d.x, 5, d.y, d.names, dump_hp).to_json();
  dump_hp.workers = 4;
  const auto dump2 = train_gbdt(d.x, 5, d.y, d.names, dump_hp).to_json();

  const auto detail = fmt("separable gbdt=%.4f logistic=%.4f", sep, sep_lr) +
                      fmt(" shuffled in [%.4f, %.4f]", lo, hi) + fmt(" grad rel err %.2e", worst) +
                      (dump1 == dump2 ? " dump identical" : " dump differs");
  const bool ok = sep == 1.0 && sep_lr == 1.0 && lo >= 0.40 && hi <= 0.60 && worst <= 1e-5 &&
                  dump1 == dump2;
  return ok ? pass(detail) : fail(detail);
}

// 6 -------------------------------------------------------------------------

Outcome determinism() {
  auto a = RunConfig::load(fs::path(PROXILINK_FIXTURES) / "synthetic" / "config.json");
  a.classifier.hyperparams.n_estimators = 40;
  a.output_dir = scratch("det_a");
  auto b = a;
  b.output_dir = scratch("det_b");
  auto c = a;
  c.output_dir = scratch("det_c");
  c.workers = 4;
  run_pipeline(a);
  run_pipeline(b);
  run_pipeline(c);
  std::size_t compared = 0;
  for (const auto* other : {&b, &c}) {
    for (auto seed : a.seeds) {
      for (const char* f : {"features/train.csv", "features/valid.csv", "features/test.csv", "model.json"}) {
        ++compared;
        if (slurp(seed_dir(a, seed) / f) != slurp(seed_dir(*other, seed) / f)) {
          return fail(std::string(f) + " differs for seed " + std::to_string(seed));
        }
      }
    }
    for (const auto& entry : fs::directory_iterator(a.output_dir)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("report", 0) != 0) continue;
      ++compared;
      if (slurp(entry.path()) != slurp(other->output_dir / name)) return fail(name + " differs");
    }
  }
  return pass(std::to_string(compared) + " artifacts byte-identical across reruns and workers 1/4");
}

// 10 ------------------------------------------------------------------------

std::string check_importance(const GbdtModel& model, std::span<const double> x, std::size_t cols) {
  const auto imp = model.feature_importance();
  const double sum = std::accumulate(imp.begin(), imp.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) return fmt("importance sums to %.12f", sum);
  const std::size_t rows = x.size() / cols;
  for (std::size_t j = 0; j < cols; ++j) {
    bool constant = true;
    for (std::size_t i = 1; i < rows && constant; ++i) constant = x[i * cols + j] == x[j];
    if (constant && imp[j] != 0.0) return "constant column " + model.feature_names()[j] + " scored";
  }
  return {};
}

Outcome importance_law(const std::vector<fs::path>& extra_runs) {
  std::size_t models = 0;
  auto c = RunConfig::load(fs::path(PROXILINK_FIXTURES) / "synthetic" / "config.json");
  c.classifier.hyperparams.n_estimators = 60;
  c.output_dir = scratch("importance");
  run_split(c);
  run_featurize(c);
  std::vector<fs::path> seed_dirs;
  for (auto seed : c.seeds) seed_dirs.push_back(seed_dir(c, seed));
  for (const auto& run : extra_runs)
    for (const auto& e : fs::directory_iterator(run))
      if (e.path().filename().string().rfind("seed_", 0) == 0) seed_dirs.push_back(e.path());
  for (const auto& dir : seed_dirs) {
    const auto train = read_feature_csv(dir / "features" / "train.csv");
    // Append a constant column to make the law non-vacuous.
    FeatureMatrix m = train;
    m.names.push_back("constant");
    m.values.clear();
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const auto row = train.row(r);
      m.values.insert(m.values.end(), row.begin(), row.end());
      m.values.push_back(1.0);
    }
    auto hp = c.classifier.hyperparams;
    hp.colsample_bytree = 0.8;
    const auto model = train_gbdt(m.values, m.cols(), m.labels, m.names, hp);
    ++models;
    if (auto err = check_importance(model, m.values, m.cols()); !err.empty()) {
      return fail(dir.string() + ": " + err);
    }
  }
  return pass(std::to_string(models) + " models: importances sum to 1, constant columns 0");
}

// 7-9 -----------------------------------------------------------------------

fs::path data_dir() {
  const char* d = std::getenv("PROXILINK_DATA_DIR");
  return d ? fs::path(d) : fs::path();
}

bool have(const std::string& name) {
  const auto d = data_dir();
  return !d.empty() && fs::exists(d / name / "config.json");
}

RunConfig dataset_config(const std::string& name, const std::string& out) {
  auto c = RunConfig::load(data_dir() / name / "config.json");
  c.output_dir = scratch(out);
  c.seeds.resize(10);
  std::iota(c.seeds.begin(), c.seeds.end(), 0);
  c.ratios = SplitRatios{0.85, 0.05, 0.10};
  c.metrics = {MetricSpec{"auc", 0}};
  c.classifier.preset = "auc";
  c.classifier.hyperparams = preset("auc");
  const char* w = std::getenv("PROXILINK_WORKERS");
  c.workers = w ? std::max<std::size_t>(1, std::strtoul(w, nullptr, 10)) : 4;
  return c;
}

Outcome cora_diagnostics() {
  if (!have("cora")) return skip("set PROXILINK_DATA_DIR to a directory with cora/config.json");
  auto c = dataset_config("cora", "cora_analyze");
  const auto d = run_analyze(c);
  const auto detail = fmt("transitivity=%.4f H_n=%.4f H_e=%.4f", d.transitivity,
                          d.node_homophily.value_or(-1), d.edge_homophily.value_or(-1));
  const bool ok = std::abs(d.transitivity - 0.092) <= 0.003 &&
                  std::abs(d.node_homophily.value_or(-1) - 0.83) <= 0.01 &&
                  std::abs(d.edge_homophily.value_or(-1) - 0.81) <= 0.01;
  return ok ? pass(detail) : fail(detail);
}

std::vector<fs::path> dataset_runs;

Outcome dataset_auc() {
  struct Target {
    const char* name;
    double floor;
  };
  std::string detail;
  bool ran = false, ok = true;
  for (const Target& t : {Target{"cora", 0.940}, Target{"texas", 0.800}}) {
    if (!have(t.name)) {
      detail += std::string(t.name) + " absent; ";
      continue;
    }
    ran = true;
    auto c = dataset_config(t.name, std::string(t.name) + "_auc");
    const auto start = Clock::now();
    const auto r = run_pipeline(c);
    const double secs = seconds_since(start);
    dataset_runs.push_back(c.output_dir);
    detail += std::string(t.name) + fmt(" AUC %.2f +/- %.2f in %.0f s; ", 100 * r[0].mean, 100 * r[0].std, secs);
    ok = ok && r[0].mean >= t.floor && secs < 15 * 60;
  }
  if (!ran) return skip(detail + "set PROXILINK_DATA_DIR");
  if (detail.size() > 2) detail.resize(detail.size() - 2);
  return ok ? pass(detail) : fail(detail);
}

Outcome ablation() {
  std::string detail;
  bool ran = false, ok = true;
  for (const char* name : {"cora", "texas"}) {
    if (!have(name)) continue;
    ran = true;
    double mean[3];
    const FeatureGroups groups[] = {FeatureGroups::kAll, FeatureGroups::kStructural, FeatureGroups::kDomain};
    for (int i = 0; i < 3; ++i) {
      auto c = dataset_config(name, std::string(name) + "_ablation_" + std::string(feature_groups_name(groups[i])));
      c.features.groups = groups[i];
      mean[i] = run_pipeline(c)[0].mean;
    }
    detail += std::string(name) + fmt(" all=%.2f structural=%.2f domain=%.2f; ", 100 * mean[0], 100 * mean[1], 100 * mean[2]);
    ok = ok && mean[0] >= std::max(mean[1], mean[2]);
  }
  if (!ran) return skip("set PROXILINK_DATA_DIR to a directory with cora/ and texas/ configs");
  detail.resize(detail.size() - 2);
  return ok ? pass(detail) : fail(detail);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "structural oracle equivalence", structural_oracles},
      {2, "temporal oracle equivalence", temporal_oracles},
      {3, "feature-count law", feature_counts},
      {4, "metric units", metric_units},
      {5, "classifier sanity", classifier_sanity},
      {6, "determinism", determinism},
      {7, "cora transitivity and homophily", cora_diagnostics},
      {8, "dataset AUC floors", dataset_auc},
      {9, "ablation direction", ablation},
      {10, "importance law", [] { return importance_law(dataset_runs); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    if (o.verdict == Verdict::kFail) ++failures;
    std::printf("%s [%d] %s: %s\n", tag, c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
