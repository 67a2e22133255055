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

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phonapprox/features.hpp"
#include "phonapprox/ipa.hpp"

namespace phonapprox {

// One side of a rule's environment: nothing, any vowel ("V"), or an exact segment.
struct RuleContext {
  enum class Kind { none, any_vowel, segment };
  Kind kind = Kind::none;
  std::string ipa;

  static RuleContext none() { return {}; }
  static RuleContext any_vowel() { return {Kind::any_vowel, {}}; }
  static RuleContext segment(std::string ipa) { return {Kind::segment, std::move(ipa)}; }

  bool present() const noexcept { return kind != Kind::none; }
  std::string to_string() const;  // "-", "V" or the IPA symbol
  bool operator==(const RuleContext&) const = default;
};

struct AllophoneRule {
  std::string base;
  RuleContext pre;
  RuleContext post;
  std::vector<std::string> transformations;  // one or two registry names
  std::string realized;

  // "base | pre | post | t1+t2 | realized", the inventory file line.
  std::string to_string() const;
  bool operator==(const AllophoneRule&) const = default;
};

enum class Position { word_initial, other };

struct ApproxTarget {
  std::string ipa;
  Position position = Position::other;
};

struct InventoryEntry {
  Segment segment;
  // False for segments that never surface word-initially in the language.
  bool word_initial = true;

  bool operator==(const InventoryEntry&) const = default;
};

class Inventory {
 public:
  std::string language;
  // Vowel used to manufacture a preceding environment for word-initial targets.
  std::string epenthetic;
  std::vector<InventoryEntry> entries;
  std::vector<AllophoneRule> rules;

  const InventoryEntry* find(std::string_view ipa) const;
  bool contains(std::string_view ipa) const { return find(ipa) != nullptr; }
  bool licensed(const InventoryEntry& entry, Position position) const {
    return position == Position::other || entry.word_initial;
  }

  std::vector<Segment> segments() const;
  std::vector<Segment> vowels() const;
  std::vector<Segment> consonants() const;

  bool operator==(const Inventory&) const = default;
};

// Sectioned text:
//   [settings]  key = value   (language, epenthetic)
//   [segments]  one IPA symbol per line, optionally followed by "medial"
//   [rules]     base | pre | post | transformation(+transformation) | realized
// Context sides use "-" for absent and "V" for any vowel. Lines starting
// with '#' are comments. Every symbol must resolve in the feature table and
// every transformation in the registry.
Inventory load_inventory(std::istream& source, const FeatureTable& table);
Inventory load_inventory_file(const std::string& path, const FeatureTable& table);

void write_inventory(std::ostream& out, const Inventory& inventory);

// Rules whose base is this consonant, paired with the realized allophone.
std::vector<std::pair<AllophoneRule, Segment>> realized_allophones(const Inventory& inventory,
                                                                   const Segment& base,
                                                                   const FeatureTable& table);

// Does applying the rule's transformations to the base reproduce the
// realized segment on every feature the transformations name?
bool rule_is_consistent(const AllophoneRule& rule, const FeatureTable& table);

}  // namespace phonapprox
