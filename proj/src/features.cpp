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

#include "phonapprox/features.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "phonapprox/error.hpp"
#include "phonapprox/ipa.hpp"
#include "phonapprox/kernels.hpp"
#include "text_util.hpp"

namespace phonapprox {

char mark_symbol(Mark mark) {
  switch (mark) {
    case Mark::plus:
      return '+';
    case Mark::minus:
      return '-';
    case Mark::unspecified:
      return '0';
  }
  return '?';
}

std::optional<Mark> parse_mark(std::string_view text) {
  if (text == "+") return Mark::plus;
  if (text == "-" || text == "\xE2\x88\x92") return Mark::minus;  // U+2212 minus sign too
  if (text == "0") return Mark::unspecified;
  return std::nullopt;
}

FeatureSpec::FeatureSpec(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() != kSize) {
    throw ContractError("feature schema must have " + std::to_string(kSize) + " names, got " +
                        std::to_string(names_.size()));
  }
  std::set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ContractError("empty feature name");
    if (!seen.insert(name).second) throw ContractError("duplicate feature name: " + name);
  }
  for (const char* required : {"front", "back", "high", "low", "round", "syllabic"}) {
    if (!seen.count(required)) {
      throw ContractError(std::string("feature schema lacks required feature: ") + required);
    }
  }
}

std::shared_ptr<const FeatureSpec> FeatureSpec::default_spec() {
  static const auto spec = std::make_shared<const FeatureSpec>(std::vector<std::string>{
      "syllabic", "sonorant", "consonantal", "continuant", "delayed_release", "lateral",
      "nasal", "strident", "voice", "spread_glottis", "constricted_glottis", "anterior",
      "coronal", "distributed", "labial", "high", "low", "back", "round", "tense", "long",
      "front"});
  return spec;
}

std::optional<std::size_t> FeatureSpec::find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t FeatureSpec::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ContractError("unknown feature: " + std::string(name));
}

FeatureVector::FeatureVector(FeatureSpecPtr spec) : spec_(std::move(spec)) {
  if (!spec_) throw ContractError("feature vector without a schema");
}

FeatureVector::FeatureVector(FeatureSpecPtr spec, std::span<const Mark> marks)
    : FeatureVector(std::move(spec)) {
  if (marks.size() != spec_->size()) {
    throw ContractError("expected " + std::to_string(spec_->size()) + " marks, got " +
                        std::to_string(marks.size()));
  }
  for (std::size_t i = 0; i < marks.size(); ++i) set(i, marks[i]);
}

std::string FeatureVector::to_string() const {
  std::string out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(mark_symbol((*this)[i]));
  return out;
}

bool FeatureVector::same_spec(const FeatureVector& other) const {
  return spec_ == other.spec_ || *spec_ == *other.spec_;
}

bool FeatureVector::operator==(const FeatureVector& other) const {
  return same_spec(other) && marks_ == other.marks_;
}

int distance(const FeatureVector& a, const FeatureVector& b) {
  if (!a.same_spec(b)) throw ContractError("distance between vectors of different schemas");
  return kernels::active().mismatch_count(a.data(), b.data(), FeatureVector::kStorage);
}

void FeatureTable::add(std::string_view ipa, FeatureVector vector, std::size_t line) {
  if (!vector.same_spec(FeatureVector(spec_))) {
    throw DataError("row uses a different feature schema", line);
  }
  std::string key = nfc(ipa);
  if (key.empty()) throw DataError("empty segment symbol", line);
  if (index_.count(key)) throw DataError("duplicate segment: " + key, line);
  max_key_bytes_ = std::max(max_key_bytes_, key.size());
  index_.emplace(key, rows_.size());
  keys_.push_back(std::move(key));
  rows_.push_back(std::move(vector));
}

const FeatureVector* FeatureTable::find(std::string_view ipa) const {
  auto it = index_.find(std::string(ipa));
  if (it == index_.end()) it = index_.find(nfc(ipa));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

const FeatureVector* FeatureTable::find_exact(std::string_view key) const {
  const auto it = index_.find(std::string(key));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

const FeatureVector& FeatureTable::at(std::string_view ipa) const {
  if (const auto* v = find(ipa)) return *v;
  throw DataError("segment not in feature table: " + std::string(ipa));
}

FeatureTable load_feature_table(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<FeatureTable> table;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) line = std::string(detail::strip_bom(line));
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto cells = detail::split(trimmed, ',');
    if (!table) {
      if (cells.empty() || detail::trim(cells[0]) != "seg") {
        throw DataError("header must start with \"seg\"", line_no);
      }
      std::vector<std::string> names;
      for (std::size_t i = 1; i < cells.size(); ++i) names.emplace_back(detail::trim(cells[i]));
      try {
        table.emplace(std::make_shared<const FeatureSpec>(std::move(names)));
      } catch (const ContractError& e) {
        throw DataError(e.what(), line_no);
      }
      continue;
    }
    const std::size_t want = table->spec()->size() + 1;
    if (cells.size() != want) {
      throw DataError("expected " + std::to_string(want) + " fields, got " +
                          std::to_string(cells.size()),
                      line_no);
    }
    FeatureVector vector(table->spec());
    for (std::size_t i = 1; i < cells.size(); ++i) {
      const auto cell = detail::trim(cells[i]);
      const auto mark = parse_mark(cell);
      if (!mark) throw DataError("unknown mark \"" + std::string(cell) + "\"", line_no);
      vector.set(i - 1, *mark);
    }
    table->add(detail::trim(cells[0]), std::move(vector), line_no);
  }
  if (!table) throw DataError("feature table has no header");
  return std::move(*table);
}

FeatureTable load_feature_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feature table: " + path);
  return load_feature_table(in);
}

void write_feature_table(std::ostream& out, const FeatureTable& table) {
  out << "seg";
  for (const auto& name : table.spec()->names()) out << ',' << name;
  out << '\n';
  for (const auto& key : table.keys()) {
    out << key;
    const auto& v = table.at(key);
    for (std::size_t i = 0; i < v.size(); ++i) out << ',' << mark_symbol(v[i]);
    out << '\n';
  }
}

}  // namespace phonapprox
