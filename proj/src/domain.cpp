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

#include "proxilink/domain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "proxilink/error.hpp"
#include "text_io.hpp"

namespace proxilink {

BinaryBlock::BinaryBlock(std::size_t rows, std::size_t dims)
    : rows_(rows), dims_(dims), words_per_row_((dims + 63) / 64), bits_(rows * words_per_row_, 0) {}

BinaryBlock BinaryBlock::from_dense(std::size_t rows, std::size_t dims,
                                    std::span<const std::uint8_t> values) {
  if (values.size() != rows * dims) {
    throw InputError("binary block expects " + std::to_string(rows * dims) + " entries, got " +
                     std::to_string(values.size()));
  }
  BinaryBlock block(rows, dims);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < dims; ++c) {
      const auto x = values[r * dims + c];
      if (x > 1) {
        throw InputError("binary block entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") is " + std::to_string(x) + ", expected 0 or 1");
      }
      block.set(r, c, x == 1);
    }
  }
  return block;
}

void BinaryBlock::set(std::size_t row, std::size_t col, bool value) {
  auto& word = bits_[row * words_per_row_ + col / 64];
  const std::uint64_t bit = std::uint64_t{1} << (col % 64);
  word = value ? (word | bit) : (word & ~bit);
}

bool BinaryBlock::get(std::size_t row, std::size_t col) const {
  return (bits_[row * words_per_row_ + col / 64] >> (col % 64)) & 1U;
}

std::vector<std::uint8_t> BinaryBlock::dense_row(std::size_t row) const {
  std::vector<std::uint8_t> out(dims_);
  for (std::size_t c = 0; c < dims_; ++c) out[c] = get(row, c) ? 1 : 0;
  return out;
}

std::size_t BinaryBlock::common_ones(std::size_t a, std::size_t b) const {
  const auto wa = words(a);
  const auto wb = words(b);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_per_row_; ++i) n += std::popcount(wa[i] & wb[i]);
  return n;
}

std::size_t BinaryBlock::union_ones(std::size_t a, std::size_t b) const {
  const auto wa = words(a);
  const auto wb = words(b);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_per_row_; ++i) n += std::popcount(wa[i] | wb[i]);
  return n;
}

std::size_t BinaryBlock::common_zeros(std::size_t a, std::size_t b) const {
  return dims_ - union_ones(a, b);
}

void NodeAttributes::validate() const {
  if (!binary && !classes && !real) throw ConfigError("node attributes carry no blocks");
  if (binary && binary->rows() != num_nodes) {
    throw ConfigError("binary block has " + std::to_string(binary->rows()) + " rows for " +
                      std::to_string(num_nodes) + " nodes");
  }
  if (classes) {
    if (classes->labels.size() != num_nodes) {
      throw ConfigError("class block has " + std::to_string(classes->labels.size()) +
                        " labels for " + std::to_string(num_nodes) + " nodes");
    }
    for (std::size_t i = 0; i < classes->labels.size(); ++i) {
      if (classes->labels[i] >= classes->num_classes) {
        throw InputError("class label " + std::to_string(classes->labels[i]) + " of node " +
                         std::to_string(i) + " is >= class count " +
                         std::to_string(classes->num_classes));
      }
    }
  }
  if (real) {
    if (real->rows != num_nodes || real->values.size() != real->rows * real->dims) {
      throw ConfigError("real block shape does not match " + std::to_string(num_nodes) +
                        " nodes");
    }
    for (double x : real->values) {
      if (!std::isfinite(x)) throw InputError("real block contains a non-finite entry");
    }
  }
}

namespace {

struct CsvRow {
  std::size_t line_no;
  NodeId node;
  std::vector<std::string_view> fields;  // excluding node id
};

// Reads an attribute CSV and hands each data row to `on_row`. The first
// non-empty line is a header when `has_header`.
template <typename OnRow>
void read_attribute_rows(const std::filesystem::path& path, const NodeIndex& index,
                         bool has_header, std::size_t& width, OnRow&& on_row) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::vector<bool> seen(index.size(), false);
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = detail::split(body, ",");
    if (header_pending) {
      header_pending = false;
      width = fields.size() - 1;
      continue;
    }
    if (fields.size() != width + 1) {
      throw InputError(detail::where(path, line_no) + "expected " + std::to_string(width + 1) +
                       " fields, got " + std::to_string(fields.size()));
    }
    const auto node = index.find(fields[0]);
    if (!node) {
      throw InputError(detail::where(path, line_no) + "unknown node id '" +
                       std::string(fields[0]) + "'");
    }
    if (seen[*node]) {
      throw InputError(detail::where(path, line_no) + "duplicate row for node '" +
                       std::string(fields[0]) + "'");
    }
    seen[*node] = true;
    fields.erase(fields.begin());
    on_row(CsvRow{line_no, *node, std::move(fields)});
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw InputError(path.string() + ": no row for node '" + index.external(NodeId(i)) + "'");
    }
  }
}

}  // namespace

void intern_attribute_ids(const std::filesystem::path& path, NodeIndex& index) {
  auto in = detail::open_input(path);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split(body, ",");
    if (header) {
      header = false;
      // Class files may be headerless: a numeric second column is data.
      double probe = 0;
      if (fields.size() != 2 || !detail::parse_number(fields[1], probe)) continue;
    }
    index.intern(fields[0]);
  }
}

BinaryBlock read_binary_block(const std::filesystem::path& path, const NodeIndex& index) {
  std::size_t width = 0;
  std::vector<std::uint8_t> dense;
  std::vector<std::pair<NodeId, std::vector<std::uint8_t>>> rows;
  read_attribute_rows(path, index, true, width, [&](const CsvRow& row) {
    std::vector<std::uint8_t> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      unsigned x = 0;
      if (!detail::parse_number(row.fields[c], x) || x > 1) {
        throw InputError(detail::where(path, row.line_no) + "binary entry '" +
                         std::string(row.fields[c]) + "' is not 0 or 1");
      }
      values[c] = static_cast<std::uint8_t>(x);
    }
    rows.emplace_back(row.node, std::move(values));
  });
  BinaryBlock block(index.size(), width);
  for (const auto& [node, values] : rows) {
    for (std::size_t c = 0; c < width; ++c) block.set(node, c, values[c] == 1);
  }
  return block;
}

RealBlock read_real_block(const std::filesystem::path& path, const NodeIndex& index) {
  std::size_t width = 0;
  RealBlock block;
  block.rows = index.size();
  std::vector<std::pair<NodeId, std::vector<double>>> rows;
  read_attribute_rows(path, index, true, width, [&](const CsvRow& row) {
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!detail::parse_number(row.fields[c], values[c]) || !std::isfinite(values[c])) {
        throw InputError(detail::where(path, row.line_no) + "real entry '" +
                         std::string(row.fields[c]) + "' is not a finite number");
      }
    }
    rows.emplace_back(row.node, std::move(values));
  });
  block.dims = width;
  block.values.assign(block.rows * width, 0.0);
  for (const auto& [node, values] : rows) {
    std::copy(values.begin(), values.end(), block.values.begin() + std::ptrdiff_t(node * width));
  }
  return block;
}

ClassBlock read_class_block(const std::filesystem::path& path, const NodeIndex& index,
                            std::uint32_t num_classes) {
  // Detect an optional header from the first data line.
  bool has_header = false;
  {
    auto in = detail::open_input(path);
    std::string line;
    while (std::getline(in, line)) {
      const auto body = detail::trim(line);
      if (body.empty() || body.front() == '#') continue;
      const auto fields = detail::split(body, ",");
      std::uint32_t probe = 0;
      has_header = fields.size() != 2 || !detail::parse_number(fields[1], probe);
      break;
    }
  }
  std::size_t width = 1;
  ClassBlock block;
  block.labels.assign(index.size(), 0);
  std::uint32_t max_label = 0;
  read_attribute_rows(path, index, has_header, width, [&](const CsvRow& row) {
    std::uint32_t label = 0;
    if (row.fields.size() != 1 || !detail::parse_number(row.fields[0], label)) {
      throw InputError(detail::where(path, row.line_no) +
                       "class label must be a non-negative integer");
    }
    block.labels[row.node] = label;
    max_label = std::max(max_label, label);
  });
  if (num_classes == 0) {
    block.num_classes = index.size() == 0 ? 0 : max_label + 1;
  } else {
    if (max_label >= num_classes) {
      throw InputError(path.string() + ": label " + std::to_string(max_label) +
                       " >= configured class count " + std::to_string(num_classes));
    }
    block.num_classes = num_classes;
  }
  return block;
}

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": length mismatch " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

}  // namespace

std::size_t common_digits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  require_same_length(a.size(), b.size(), "common_digits");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] == 1 && b[i] == 1);
  return n;
}

double normalized_common_digits(std::span<const std::uint8_t> a,
                                std::span<const std::uint8_t> b) {
  require_same_length(a.size(), b.size(), "normalized_common_digits");
  std::size_t both = 0;
  std::size_t any = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    both += (a[i] == 1 && b[i] == 1);
    any += (a[i] + b[i] >= 1);
  }
  return any == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(any);
}

std::size_t common_zero_digits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  require_same_length(a.size(), b.size(), "common_zero_digits");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] == 0 && b[i] == 0);
  return n;
}

std::vector<std::uint8_t> class_identifier(std::uint32_t s, std::uint32_t t, std::uint32_t m) {
  if (s >= m || t >= m) {
    throw InputError("class_identifier: labels (" + std::to_string(s) + "," + std::to_string(t) +
                     ") must be < class count " + std::to_string(m));
  }
  std::vector<std::uint8_t> out(m, 0);
  out[s] = 1;
  out[t] = 1;
  return out;
}

int common_class(std::uint32_t s, std::uint32_t t) { return s == t ? 1 : 0; }

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "l1_distance");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "cosine_distance");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::size_t common_embedding(std::span<const double> a, std::span<const double> b,
                             CommonEmbeddingMode mode) {
  require_same_length(a.size(), b.size(), "common_embedding");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mode == CommonEmbeddingMode::kEqualCoordinates) {
      n += (a[i] == b[i]);
    } else {
      n += (a[i] == 1.0 && b[i] == 1.0);
    }
  }
  return n;
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::kBinary: return "binary";
    case Profile::kPpa: return "ppa";
    case Profile::kReal: return "real";
    case Profile::kCollab: return "collab";
  }
  return "unknown";
}

Profile parse_profile(std::string_view name) {
  if (name == "binary") return Profile::kBinary;
  if (name == "ppa") return Profile::kPpa;
  if (name == "real") return Profile::kReal;
  if (name == "collab") return Profile::kCollab;
  throw ConfigError("unknown profile '" + std::string(name) +
                    "' (expected binary, ppa, real or collab)");
}

namespace {

void require_block(bool present, Profile profile, const char* block) {
  if (!present) {
    throw ConfigError("profile '" + std::string(profile_name(profile)) + "' requires the " +
                      block + " attribute block");
  }
}

}  // namespace

std::vector<std::string> domain_names(const NodeAttributes& attrs, Profile profile,
                                      const DomainOptions& options) {
  std::vector<std::string> names;
  switch (profile) {
    case Profile::kBinary:
      require_block(attrs.binary.has_value(), profile, "binary");
      require_block(attrs.classes.has_value(), profile, "class");
      names = {"common_digits", "norm_common_digits"};
      if (options.common_zeros) names.emplace_back("common_zeros");
      names.emplace_back("common_class");
      for (std::uint32_t i = 0; i < attrs.classes->num_classes; ++i) {
        names.push_back("class_id_" + std::to_string(i));
      }
      break;
    case Profile::kPpa:
      require_block(attrs.classes.has_value(), profile, "class");
      names = {"vclass_lo", "vclass_hi", "common_class"};
      break;
    case Profile::kReal:
      require_block(attrs.real.has_value(), profile, "real");
      names = {"l1_distance", "cosine_distance"};
      if (options.common_embedding) names.emplace_back("common_embedding");
      break;
    case Profile::kCollab:
      throw ConfigError("the collab profile is featurized from a temporal graph");
  }
  return names;
}

std::vector<double> domain_vector(const NodeAttributes& attrs, NodeId u, NodeId v,
                                  Profile profile, const DomainOptions& options) {
  if (u >= attrs.num_nodes || v >= attrs.num_nodes) {
    throw InputError("domain_vector: node id out of range");
  }
  std::vector<double> out;
  switch (profile) {
    case Profile::kBinary: {
      require_block(attrs.binary.has_value(), profile, "binary");
      require_block(attrs.classes.has_value(), profile, "class");
      const auto& bin = *attrs.binary;
      const auto both = bin.common_ones(u, v);
      const auto any = bin.union_ones(u, v);
      out.push_back(static_cast<double>(both));
      out.push_back(any == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(any));
      if (options.common_zeros) out.push_back(static_cast<double>(bin.common_zeros(u, v)));
      const auto s = attrs.classes->labels[u];
      const auto t = attrs.classes->labels[v];
      out.push_back(common_class(s, t));
      for (auto bit : class_identifier(s, t, attrs.classes->num_classes)) out.push_back(bit);
      break;
    }
    case Profile::kPpa: {
      require_block(attrs.classes.has_value(), profile, "class");
      const auto s = attrs.classes->labels[u];
      const auto t = attrs.classes->labels[v];
      out.push_back(std::min(s, t));
      out.push_back(std::max(s, t));
      out.push_back(common_class(s, t));
      break;
    }
    case Profile::kReal: {
      require_block(attrs.real.has_value(), profile, "real");
      const auto a = attrs.real->row(u);
      const auto b = attrs.real->row(v);
      out.push_back(l1_distance(a, b));
      out.push_back(cosine_distance(a, b));
      if (options.common_embedding) {
        out.push_back(static_cast<double>(common_embedding(a, b, options.embedding_mode)));
      }
      break;
    }
    case Profile::kCollab:
      throw ConfigError("the collab profile is featurized from a temporal graph");
  }
  return out;
}

}  // namespace proxilink
