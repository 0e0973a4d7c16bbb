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

#include <stdexcept>
#include <string>

namespace proxilink {

/// Base class for every error raised by the library. The C API maps each
/// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input data (ids, lengths, NaNs, file lines).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration: missing attribute blocks, unknown presets,
/// missing files at validation time.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined for the given input (single class, no qualifying pairs).
class MetricError : public Error {
 public:
  using Error::Error;
};

/// The classifier cannot be fit (single-class labels and similar).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures while reading or writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace proxilink
