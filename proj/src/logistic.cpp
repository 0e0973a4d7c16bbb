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

#include "proxilink/logistic.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "proxilink/error.hpp"

namespace proxilink {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_shape(std::span<const double> values, std::size_t cols,
                 std::span<const std::uint8_t> labels) {
  if (values.size() != labels.size() * cols) {
    throw InputError("feature matrix has " + std::to_string(values.size()) + " values for " +
                     std::to_string(labels.size()) + " rows x " + std::to_string(cols) +
                     " columns");
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw InputError("non-finite feature value");
  }
}

}  // namespace

std::vector<double> standardize(std::span<const double> values, std::size_t cols,
                                std::span<const double> mean, std::span<const double> scale) {
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto c = i % cols;
    out[i] = (out[i] - mean[c]) / scale[c];
  }
  return out;
}

LogisticObjective logistic_objective(std::span<const double> values, std::size_t cols,
                                     std::span<const std::uint8_t> labels, double l2,
                                     std::span<const double> params) {
  check_shape(values, cols, labels);
  if (params.size() != cols + 1) throw InputError("expected cols + 1 parameters");
  const std::size_t n = labels.size();
  LogisticObjective out;
  out.gradient.assign(cols + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double z = params[cols];
    for (std::size_t c = 0; c < cols; ++c) z += params[c] * values[r * cols + c];
    const double y = labels[r];
    out.loss += softplus(z) - y * z;
    const double residual = sigmoid(z) - y;
    for (std::size_t c = 0; c < cols; ++c) out.gradient[c] += residual * values[r * cols + c];
    out.gradient[cols] += residual;
  }
  const double inv_n = n == 0 ? 0.0 : 1.0 / double(n);
  out.loss *= inv_n;
  for (auto& g : out.gradient) g *= inv_n;
  for (std::size_t c = 0; c < cols; ++c) {
    out.loss += 0.5 * l2 * params[c] * params[c];
    out.gradient[c] += l2 * params[c];
  }
  return out;
}

LogisticModel train_logistic(std::span<const double> values, std::size_t cols,
                             std::span<const std::uint8_t> labels, double l2, std::uint64_t,
                             double tolerance, int max_iterations) {
  check_shape(values, cols, labels);
  if (!(l2 >= 0)) throw ConfigError("l2 must be >= 0");
  const std::size_t n = labels.size();
  std::size_t positives = 0;
  for (auto y : labels) {
    if (y > 1) throw InputError("labels must be 0 or 1");
    positives += y;
  }
  if (positives == 0 || positives == n) throw TrainingError("training labels contain a single class");

  LogisticModel model;
  model.mean.assign(cols, 0.0);
  model.scale.assign(cols, 1.0);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0;
    for (std::size_t r = 0; r < n; ++r) sum += values[r * cols + c];
    model.mean[c] = sum / double(n);
    double sq = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = values[r * cols + c] - model.mean[c];
      sq += d * d;
    }
    const double sd = std::sqrt(sq / double(n));
    model.scale[c] = sd > 0 ? sd : 1.0;
  }
  const auto z = standardize(values, cols, model.mean, model.scale);
  const std::size_t dim = cols + 1;

  std::vector<double> params(dim, 0.0);
  const double base = double(positives) / double(n);
  params[cols] = std::log(base / (1.0 - base));
  auto current = logistic_objective(z, cols, labels, l2, params);

  int it = 0;
  for (; it < max_iterations; ++it) {
    Eigen::Map<const Eigen::VectorXd> grad(current.gradient.data(), Eigen::Index(dim));
    if (grad.norm() < tolerance) break;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(Eigen::Index(dim), Eigen::Index(dim));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(Eigen::Index(dim));
    for (std::size_t r = 0; r < n; ++r) {
      double s = params[cols];
      for (std::size_t c = 0; c < cols; ++c) {
        x[Eigen::Index(c)] = z[r * cols + c];
        s += params[c] * z[r * cols + c];
      }
      x[Eigen::Index(cols)] = 1.0;
      const double p = sigmoid(s);
      hess.selfadjointView<Eigen::Lower>().rankUpdate(x, p * (1.0 - p) / double(n));
    }
    hess = hess.selfadjointView<Eigen::Lower>();
    for (std::size_t c = 0; c < cols; ++c) hess(Eigen::Index(c), Eigen::Index(c)) += l2;
    hess(Eigen::Index(cols), Eigen::Index(cols)) += 1e-12;
    const Eigen::VectorXd step = hess.ldlt().solve(-grad);

    // Backtracking line search on the Armijo condition.
    double t = 1.0;
    const double slope = grad.dot(step);
    std::vector<double> trial(dim);
    LogisticObjective next;
    while (true) {
      for (std::size_t k = 0; k < dim; ++k) trial[k] = params[k] + t * step[Eigen::Index(k)];
      next = logistic_objective(z, cols, labels, l2, trial);
      if (next.loss <= current.loss + 1e-4 * t * slope || t < 1e-10) break;
      t *= 0.5;
    }
    params = trial;
    current = std::move(next);
  }
  model.weights.assign(params.begin(), params.begin() + std::ptrdiff_t(cols));
  model.bias = params[cols];
  model.iterations = it;
  model.gradient_norm =
      Eigen::Map<const Eigen::VectorXd>(current.gradient.data(), Eigen::Index(dim)).norm();
  return model;
}

std::vector<double> LogisticModel::predict(std::span<const double> values, std::size_t rows) const {
  const std::size_t cols = num_features();
  if (values.size() != rows * cols) {
    throw InputError("model expects " + std::to_string(cols) + " columns per row");
  }
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = bias;
    for (std::size_t c = 0; c < cols; ++c) s += weights[c] * (values[r * cols + c] - mean[c]) / scale[c];
    out[r] = sigmoid(s);
  }
  return out;
}

}  // namespace proxilink
