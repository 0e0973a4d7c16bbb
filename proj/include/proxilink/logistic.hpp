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
#include <span>
#include <vector>

namespace proxilink {

/// L2-regularized logistic regression on internally standardized features.
struct LogisticModel {
  std::vector<double> weights;  // in standardized units
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> scale;
  int iterations = 0;
  double gradient_norm = 0.0;

  std::size_t num_features() const { return weights.size(); }
  /// `values` is row-major with num_features() columns.
  std::vector<double> predict(std::span<const double> values, std::size_t rows) const;
};

struct LogisticObjective {
  double loss = 0.0;
  std::vector<double> gradient;  // weights..., bias
};

/// Mean log loss + (l2/2)·||w||² (bias unpenalized) at params = (w..., b),
/// evaluated on `values` as given.
LogisticObjective logistic_objective(std::span<const double> values, std::size_t cols,
                                     std::span<const std::uint8_t> labels, double l2,
                                     std::span<const double> params);

/// Damped Newton iterations until the gradient norm drops below `tolerance`.
/// Throws TrainingError for single-class labels, InputError on bad shapes.
LogisticModel train_logistic(std::span<const double> values, std::size_t cols,
                             std::span<const std::uint8_t> labels, double l2 = 1.0,
                             std::uint64_t seed = 0, double tolerance = 1e-6,
                             int max_iterations = 200);

/// The standardized design matrix train_logistic fits on.
std::vector<double> standardize(std::span<const double> values, std::size_t cols,
                                std::span<const double> mean, std::span<const double> scale);

}  // namespace proxilink
