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

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "proxilink/proxilink.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string config;
  std::string seeds;
  std::size_t workers = 0;
  std::string preset;
  std::string metrics;
  std::string out;
};

int exit_code(pl_status status) {
  if (status == PL_OK) return 0;
  if (status == PL_ERR_INPUT || status == PL_ERR_CONFIG) return kExitValidation;
  return kExitRuntime;
}

int fail(pl_status status) {
  std::fprintf(stderr, "error (%s): %s\n", pl_status_name(status), pl_last_error());
  return exit_code(status);
}

bool parse_seeds(const std::string& text, std::vector<std::uint64_t>& seeds) {
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) return false;
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      return false;
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return !seeds.empty();
}

int run(const std::string& stage, const Options& o) {
  std::vector<std::uint64_t> seeds;
  if (!o.seeds.empty() && !parse_seeds(o.seeds, seeds)) {
    std::fprintf(stderr, "error (config error): --seed expects comma-separated non-negative integers\n");
    return kExitValidation;
  }
  pl_config* config = nullptr;
  pl_status st = pl_config_load(o.config.c_str(), &config);
  if (st != PL_OK) return fail(st);

  auto apply = [&]() -> pl_status {
    if (!seeds.empty()) {
      if (auto s = pl_config_set_seeds(config, seeds.data(), seeds.size()); s != PL_OK) return s;
    }
    if (o.workers > 0) {
      if (auto s = pl_config_set_workers(config, o.workers); s != PL_OK) return s;
    }
    if (!o.preset.empty()) {
      if (auto s = pl_config_set_preset(config, o.preset.c_str()); s != PL_OK) return s;
    }
    if (!o.metrics.empty()) {
      if (auto s = pl_config_set_metrics(config, o.metrics.c_str()); s != PL_OK) return s;
    }
    if (!o.out.empty()) {
      if (auto s = pl_config_set_output_dir(config, o.out.c_str()); s != PL_OK) return s;
    }
    return pl_config_validate(config);
  };
  st = apply();
  if (st != PL_OK) {
    pl_config_free(config);
    return fail(st);
  }

  char* summary = nullptr;
  st = pl_run_stage(config, stage.c_str(), &summary);
  pl_config_free(config);
  if (st != PL_OK) return fail(st);
  std::fputs(summary, stdout);
  pl_string_free(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link prediction with proximity indices and boosted trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pl_version());

  Options opts;
  std::string chosen;
  const std::vector<std::pair<std::string, std::string>> stages = {
      {"analyze", "Transitivity and homophily diagnostics"},
      {"split", "Split edges and sample negatives for each seed"},
      {"featurize", "Write train/valid/test feature CSVs"},
      {"train", "Fit the classifier for each seed"},
      {"eval", "Score the test split and aggregate across seeds"},
      {"run", "All stages end to end"},
  };
  for (const auto& [name, help] : stages) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seeds, "Comma-separated seeds, overrides the config");
    sub->add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--preset", opts.preset, "Classifier preset: auc, hits20, hits50, hits100");
    sub->add_option("--metric", opts.metrics, "auc or hits@K, comma-separated");
    sub->add_option("--out", opts.out, "Output directory");
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }
  return run(chosen, opts);
}
