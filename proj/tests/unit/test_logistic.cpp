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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "proxilink/error.hpp"
#include "proxilink/logistic.hpp"
#include "proxilink/metrics.hpp"

using namespace proxilink;

namespace {

void make(std::size_t rows, std::size_t cols, std::uint64_t seed, std::vector<double>& x,
          std::vector<std::uint8_t>& y, double noise) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  x.clear();
  y.clear();
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = g(rng) * double(j + 1);
      x.push_back(v);
      s += (j % 2 ? -0.5 : 1.0) * v;
    }
    y.push_back(s + noise * g(rng) > 0 ? 1 : 0);
  }
}

}  // namespace

TEST(Logistic, GradientMatchesFiniteDifferences) {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  make(120, 4, 1, x, y, 2.0);
  const auto z = standardize(x, 4, std::vector<double>(4, 0.0), std::vector<double>(4, 1.0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> params(5);
    for (auto& p : params) p = g(rng);
    const auto obj = logistic_objective(z, 4, y, 0.7, params);
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double h = 1e-6;
      auto plus = params, minus = params;
      plus[k] += h;
      minus[k] -= h;
      const double fd = (logistic_objective(z, 4, y, 0.7, plus).loss -
                         logistic_objective(z, 4, y, 0.7, minus).loss) / (2 * h);
      ASSERT_NEAR(obj.gradient[k], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Logistic, ConvergesToStationaryPoint) {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  make(300, 3, 3, x, y, 1.5);
  const auto model = train_logistic(x, 3, y, 1.0, 0);
  EXPECT_LT(model.gradient_norm, 1e-6);
  std::vector<double> params = model.weights;
  params.push_back(model.bias);
  const auto z = standardize(x, 3, model.mean, model.scale);
  const auto obj = logistic_objective(z, 3, y, 1.0, params);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double h = 1e-6;
    auto plus = params, minus = params;
    plus[k] += h;
    minus[k] -= h;
    const double fd = (logistic_objective(z, 3, y, 1.0, plus).loss -
                       logistic_objective(z, 3, y, 1.0, minus).loss) / (2 * h);
    EXPECT_NEAR(obj.gradient[k], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    EXPECT_NEAR(fd, 0.0, 1e-5);
  }
}

TEST(Logistic, SeparableHeldOutAucIsOne) {
  std::vector<double> xtr, xte;
  std::vector<std::uint8_t> ytr, yte;
  make(200, 1, 4, xtr, ytr, 0.0);
  make(200, 1, 5, xte, yte, 0.0);
  const auto model = train_logistic(xtr, 1, ytr, 1e-3, 0);
  EXPECT_EQ(auc(model.predict(xte, 200), yte), 1.0);
}

TEST(Logistic, ZeroFeaturesPredictBaseRate) {
  const std::vector<std::uint8_t> y = {1, 0, 0, 0};
  const auto model = train_logistic({}, 0, y, 1.0, 0);
  const auto p = model.predict({}, 4);
  ASSERT_EQ(p.size(), 4u);
  for (double v : p) EXPECT_NEAR(v, 0.25, 1e-9);
}

TEST(Logistic, Deterministic) {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  make(150, 3, 6, x, y, 1.0);
  const auto a = train_logistic(x, 3, y, 0.5, 1);
  const auto b = train_logistic(x, 3, y, 0.5, 1);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(Logistic, Errors) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_THROW(train_logistic(x, 1, std::vector<std::uint8_t>{1, 1, 1}, 1.0, 0), TrainingError);
  EXPECT_THROW(train_logistic(x, 2, std::vector<std::uint8_t>{1, 0, 1}, 1.0, 0), InputError);
}

TEST(Logistic, ConstantColumnIsHarmless) {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  make(100, 2, 7, x, y, 1.0);
  for (std::size_t i = 0; i < 100; ++i) x[i * 2 + 1] = 3.0;
  const auto model = train_logistic(x, 2, y, 1.0, 0);
  EXPECT_EQ(model.weights[1], 0.0);
  for (double p : model.predict(x, 100)) EXPECT_TRUE(std::isfinite(p));
}
