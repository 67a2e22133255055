// Copyright 2026 The phonapprox Authors
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

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phonapprox {

enum class Mark : std::int8_t { minus = -1, unspecified = 0, plus = 1 };

char mark_symbol(Mark mark);
std::optional<Mark> parse_mark(std::string_view text);

// Ordered, named coordinates of the feature space. Always 22 unique names,
// including the five vowel-identity features front/back/high/low/round.
class FeatureSpec {
 public:
  static constexpr std::size_t kSize = 22;

  explicit FeatureSpec(std::vector<std::string> names);

  static std::shared_ptr<const FeatureSpec> default_spec();

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  // Throws ContractError for unknown names.
  std::size_t index(std::string_view name) const;

  bool operator==(const FeatureSpec& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using FeatureSpecPtr = std::shared_ptr<const FeatureSpec>;

class FeatureVector {
 public:
  // Marks are stored padded to 32 bytes so the SIMD kernels can load them whole.
  static constexpr std::size_t kStorage = 32;

  explicit FeatureVector(FeatureSpecPtr spec);
  FeatureVector(FeatureSpecPtr spec, std::span<const Mark> marks);

  Mark operator[](std::size_t i) const { return static_cast<Mark>(marks_[i]); }
  Mark at(std::string_view feature) const { return (*this)[spec_->index(feature)]; }
  void set(std::size_t i, Mark mark) { marks_[i] = static_cast<std::int8_t>(mark); }
  void set(std::string_view feature, Mark mark) { set(spec_->index(feature), mark); }

  std::size_t size() const noexcept { return spec_->size(); }
  const FeatureSpec& spec() const noexcept { return *spec_; }
  const FeatureSpecPtr& spec_ptr() const noexcept { return spec_; }
  const std::int8_t* data() const noexcept { return marks_.data(); }

  // "+-0..." in schema order.
  std::string to_string() const;

  bool same_spec(const FeatureVector& other) const;
  bool operator==(const FeatureVector& other) const;

 private:
  FeatureSpecPtr spec_;
  alignas(32) std::array<std::int8_t, kStorage> marks_{};
};

// Number of features where both marks are specified and differ. Throws
// ContractError when the vectors come from different schemas.
int distance(const FeatureVector& a, const FeatureVector& b);

// Segment -> feature vector rows, keyed by NFC-normalized IPA, in file order.
class FeatureTable {
 public:
  explicit FeatureTable(FeatureSpecPtr spec) : spec_(std::move(spec)) {}

  const FeatureSpecPtr& spec() const noexcept { return spec_; }

  // Throws DataError if the (normalized) key is already present.
  void add(std::string_view ipa, FeatureVector vector, std::size_t line = 0);

  const FeatureVector* find(std::string_view ipa) const;
  // Lookup for keys the caller has already normalized.
  const FeatureVector* find_exact(std::string_view key) const;
  const FeatureVector& at(std::string_view ipa) const;
  bool contains(std::string_view ipa) const { return find(ipa) != nullptr; }

  const std::vector<std::string>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t max_key_bytes() const noexcept { return max_key_bytes_; }

 private:
  FeatureSpecPtr spec_;
  std::vector<std::string> keys_;
  std::vector<FeatureVector> rows_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t max_key_bytes_ = 0;
};

// Comma-delimited: header "seg,<22 feature names>", then one row per
// segment with marks drawn from {+, -, 0}. Lines starting with '#' and
// blank lines are ignored. Errors carry the 1-based line number.
FeatureTable load_feature_table(std::istream& source);
FeatureTable load_feature_table_file(const std::string& path);

void write_feature_table(std::ostream& out, const FeatureTable& table);

}  // namespace phonapprox
