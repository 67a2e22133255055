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

// Shared test fixtures: bundled data loaded once, and builders for small
// hand-made feature tables.

#include <map>
#include <sstream>
#include <string>

#include "phonapprox/features.hpp"
#include "phonapprox/inventory.hpp"

namespace phonapprox::testing {

inline std::string data_path(const std::string& name) { return std::string(PHONAPPROX_DATA_DIR) + "/" + name; }
inline std::string test_path(const std::string& name) { return std::string(PHONAPPROX_TEST_DIR) + "/" + name; }

inline const FeatureTable& bundled_table() {
  static const FeatureTable table = load_feature_table_file(data_path("features.csv"));
  return table;
}

inline const Inventory& bundled_inventory(const std::string& language) {
  static std::map<std::string, Inventory> cache;
  auto it = cache.find(language);
  if (it == cache.end()) {
    it = cache.emplace(language, load_inventory_file(data_path(language + ".inv"), bundled_table())).first;
  }
  return it->second;
}

inline std::string table_header() {
  std::string h = "seg";
  for (const auto& n : FeatureSpec::default_spec()->names()) h += "," + n;
  return h;
}

// One CSV row: every feature '-' except the listed overrides.
inline std::string table_row(const std::string& ipa, const std::map<std::string, char>& marks) {
  std::string row = ipa;
  for (const auto& n : FeatureSpec::default_spec()->names()) {
    const auto it = marks.find(n);
    row += ',';
    row += it == marks.end() ? '-' : it->second;
  }
  return row;
}

inline FeatureTable table_from_rows(const std::vector<std::string>& rows) {
  std::stringstream ss;
  ss << table_header() << "\n";
  for (const auto& r : rows) ss << r << "\n";
  return load_feature_table(ss);
}

}  // namespace phonapprox::testing
