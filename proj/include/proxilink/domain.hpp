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
#include <vector>

#include "proxilink/graph.hpp"

namespace proxilink {

/// Row-major {0,1} matrix, bit-packed per row.
class BinaryBlock {
 public:
  BinaryBlock() = default;
  BinaryBlock(std::size_t rows, std::size_t dims);

  /// Builds from a dense 0/1 row-major matrix; any other value is an InputError.
  static BinaryBlock from_dense(std::size_t rows, std::size_t dims,
                                std::span<const std::uint8_t> values);

  std::size_t rows() const { return rows_; }
  std::size_t dims() const { return dims_; }

  void set(std::size_t row, std::size_t col, bool value);
  bool get(std::size_t row, std::size_t col) const;
  std::vector<std::uint8_t> dense_row(std::size_t row) const;

  std::size_t common_ones(std::size_t a, std::size_t b) const;
  std::size_t common_zeros(std::size_t a, std::size_t b) const;
  std::size_t union_ones(std::size_t a, std::size_t b) const;

 private:
  std::span<const std::uint64_t> words(std::size_t row) const {
    return {bits_.data() + row * words_per_row_, words_per_row_};
  }

  std::size_t rows_ = 0;
  std::size_t dims_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct ClassBlock {
  std::vector<std::uint32_t> labels;
  std::uint32_t num_classes = 0;
};

struct RealBlock {
  std::size_t rows = 0;
  std::size_t dims = 0;
  std::vector<double> values;  // row-major

  std::span<const double> row(std::size_t r) const { return {values.data() + r * dims, dims}; }
};

/// Per-node attribute blocks; each is optional but at least one is present.
struct NodeAttributes {
  std::size_t num_nodes = 0;
  std::optional<BinaryBlock> binary;
  std::optional<ClassBlock> classes;
  std::optional<RealBlock> real;

  /// Checks block shapes against num_nodes and entry domains.
  void validate() const;
};

// Attribute files. Binary and real blocks are headered CSVs
// "node_id,f0,...,f{d-1}"; classes are "node_id,class". Node ids are
// external ids resolved through `index`; every node in the index must have
// exactly one row.
BinaryBlock read_binary_block(const std::filesystem::path& path, const NodeIndex& index);
RealBlock read_real_block(const std::filesystem::path& path, const NodeIndex& index);
/// num_classes = 0 infers max label + 1.
ClassBlock read_class_block(const std::filesystem::path& path, const NodeIndex& index,
                            std::uint32_t num_classes = 0);

/// Registers every node id listed in an attribute file so attribute-only
/// nodes exist as isolated graph nodes.
void intern_attribute_ids(const std::filesystem::path& path, NodeIndex& index);

// Per-pair primitives on plain vectors.
std::size_t common_digits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double normalized_common_digits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::size_t common_zero_digits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::vector<std::uint8_t> class_identifier(std::uint32_t s, std::uint32_t t, std::uint32_t m);
int common_class(std::uint32_t s, std::uint32_t t);
double l1_distance(std::span<const double> a, std::span<const double> b);
/// Cosine similarity; 0 when either vector has zero norm.
double cosine_distance(std::span<const double> a, std::span<const double> b);

enum class CommonEmbeddingMode {
  kEqualCoordinates,  // #{i : a_i == b_i}
  kMatchingOnes,      // #{i : a_i == b_i == 1}
};
std::size_t common_embedding(std::span<const double> a, std::span<const double> b,
                             CommonEmbeddingMode mode = CommonEmbeddingMode::kEqualCoordinates);

enum class Profile {
  kBinary,  // binary block + classes: CD, normalized CD, common class, class id
  kPpa,     // classes only: sorted vanilla class pair + common class
  kReal,    // real block: L1 + cosine (+ common embedding)
  kCollab,  // temporal collaboration indices
};

std::string_view profile_name(Profile p);
Profile parse_profile(std::string_view name);

struct DomainOptions {
  bool common_zeros = false;
  bool common_embedding = false;
  CommonEmbeddingMode embedding_mode = CommonEmbeddingMode::kEqualCoordinates;
};

/// Column names of the domain vector for a schema; a pure function of the
/// present block shapes, the profile and the options.
std::vector<std::string> domain_names(const NodeAttributes& attrs, Profile profile,
                                      const DomainOptions& options = {});

/// Domain vector for (u,v) laid out as domain_names(). Throws ConfigError
/// naming the missing block when the profile needs one that is absent.
std::vector<double> domain_vector(const NodeAttributes& attrs, NodeId u, NodeId v,
                                  Profile profile, const DomainOptions& options = {});

}  // namespace proxilink
