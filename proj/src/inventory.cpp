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

#include "phonapprox/inventory.hpp"

#include <fstream>

#include "phonapprox/error.hpp"
#include "phonapprox/transformations.hpp"
#include "text_util.hpp"

namespace phonapprox {

std::string RuleContext::to_string() const {
  switch (kind) {
    case Kind::none:
      return "-";
    case Kind::any_vowel:
      return "V";
    case Kind::segment:
      return ipa;
  }
  return "-";
}

std::string AllophoneRule::to_string() const {
  std::string chain;
  for (const auto& t : transformations) {
    if (!chain.empty()) chain += '+';
    chain += t;
  }
  return base + " | " + pre.to_string() + " | " + post.to_string() + " | " + chain + " | " +
         realized;
}

const InventoryEntry* Inventory::find(std::string_view ipa) const {
  for (const auto& e : entries) {
    if (e.segment.ipa == ipa) return &e;
  }
  const auto key = nfc(ipa);
  for (const auto& e : entries) {
    if (e.segment.ipa == key) return &e;
  }
  return nullptr;
}

std::vector<Segment> Inventory::segments() const {
  std::vector<Segment> out;
  for (const auto& e : entries) out.push_back(e.segment);
  return out;
}

std::vector<Segment> Inventory::vowels() const {
  std::vector<Segment> out;
  for (const auto& e : entries) {
    if (e.segment.is_vowel()) out.push_back(e.segment);
  }
  return out;
}

std::vector<Segment> Inventory::consonants() const {
  std::vector<Segment> out;
  for (const auto& e : entries) {
    if (!e.segment.is_vowel()) out.push_back(e.segment);
  }
  return out;
}

namespace {

constexpr std::size_t kMaxChain = 2;

RuleContext parse_context(std::string_view text, const Inventory& inv, std::size_t line) {
  if (text == "-") return RuleContext::none();
  if (text == "V") return RuleContext::any_vowel();
  const auto* entry = inv.find(text);
  if (entry == nullptr) {
    throw DataError("rule context segment not in inventory: " + std::string(text), line);
  }
  return RuleContext::segment(entry->segment.ipa);
}

AllophoneRule parse_rule(std::string_view text, const Inventory& inv, const FeatureTable& table,
                         std::size_t line) {
  const auto fields = detail::split(text, '|');
  if (fields.size() != 5) {
    throw DataError("rule needs 5 '|'-separated fields, got " + std::to_string(fields.size()),
                    line);
  }
  AllophoneRule rule;
  const auto base = detail::trim(fields[0]);
  const auto* base_entry = inv.find(base);
  if (base_entry == nullptr) {
    throw DataError("rule base not in inventory: " + std::string(base), line);
  }
  if (base_entry->segment.is_vowel()) {
    throw DataError("rule base must be a consonant: " + std::string(base), line);
  }
  rule.base = base_entry->segment.ipa;
  rule.pre = parse_context(detail::trim(fields[1]), inv, line);
  rule.post = parse_context(detail::trim(fields[2]), inv, line);
  if (!rule.pre.present() && !rule.post.present()) {
    throw DataError("rule for " + rule.base + " has no context", line);
  }
  for (auto name : detail::split(detail::trim(fields[3]), '+')) {
    name = detail::trim(name);
    if (find_transformation(name) == nullptr) {
      throw DataError("unknown transformation: " + std::string(name), line);
    }
    rule.transformations.emplace_back(name);
  }
  if (rule.transformations.size() > kMaxChain) {
    throw DataError("transformation chains are limited to " + std::to_string(kMaxChain), line);
  }
  const auto realized = nfc(detail::trim(fields[4]));
  if (!table.contains(realized)) {
    throw DataError("realized segment not in feature table: " + realized, line);
  }
  rule.realized = realized;
  return rule;
}

}  // namespace

Inventory load_inventory(std::istream& source, const FeatureTable& table) {
  enum class Section { none, settings, segments, rules };
  Inventory inv;
  Section section = Section::none;
  std::vector<std::pair<std::string, std::size_t>> pending_rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1) line = std::string(detail::strip_bom(line));
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text.front() == '[') {
      if (text == "[settings]") section = Section::settings;
      else if (text == "[segments]") section = Section::segments;
      else if (text == "[rules]") section = Section::rules;
      else throw DataError("unknown section " + std::string(text), line_no);
      continue;
    }
    switch (section) {
      case Section::none:
        throw DataError("content before the first section header", line_no);
      case Section::settings: {
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw DataError("expected key = value", line_no);
        const auto key = detail::trim(text.substr(0, eq));
        const auto value = detail::trim(text.substr(eq + 1));
        if (key == "language") inv.language = value;
        else if (key == "epenthetic") inv.epenthetic = nfc(value);
        else throw DataError("unknown setting: " + std::string(key), line_no);
        break;
      }
      case Section::segments: {
        const auto tokens = detail::split_ws(text);
        if (tokens.size() > 2 || (tokens.size() == 2 && tokens[1] != "medial")) {
          throw DataError("segment line must be \"<ipa>\" or \"<ipa> medial\"", line_no);
        }
        const auto* vector = table.find(tokens[0]);
        if (vector == nullptr) {
          throw DataError("segment not in feature table: " + std::string(tokens[0]), line_no);
        }
        auto segment = make_segment(std::string(tokens[0]), *vector);
        if (inv.contains(segment.ipa)) {
          throw DataError("duplicate segment: " + segment.ipa, line_no);
        }
        inv.entries.push_back({std::move(segment), tokens.size() == 1});
        break;
      }
      case Section::rules:
        pending_rules.emplace_back(std::string(text), line_no);
        break;
    }
  }
  if (inv.entries.empty()) throw DataError("inventory has no segments");
  if (!inv.epenthetic.empty()) {
    const auto* e = inv.find(inv.epenthetic);
    if (e == nullptr || !e->segment.is_vowel()) {
      throw DataError("epenthetic vowel must be an inventory vowel: " + inv.epenthetic);
    }
  }
  for (const auto& [text, number] : pending_rules) {
    inv.rules.push_back(parse_rule(text, inv, table, number));
  }
  return inv;
}

Inventory load_inventory_file(const std::string& path, const FeatureTable& table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open inventory: " + path);
  return load_inventory(in, table);
}

void write_inventory(std::ostream& out, const Inventory& inv) {
  out << "[settings]\n";
  if (!inv.language.empty()) out << "language = " << inv.language << '\n';
  if (!inv.epenthetic.empty()) out << "epenthetic = " << inv.epenthetic << '\n';
  out << "\n[segments]\n";
  for (const auto& e : inv.entries) {
    out << e.segment.ipa << (e.word_initial ? "" : " medial") << '\n';
  }
  out << "\n[rules]\n";
  for (const auto& r : inv.rules) out << r.to_string() << '\n';
}

std::vector<std::pair<AllophoneRule, Segment>> realized_allophones(const Inventory& inv,
                                                                   const Segment& base,
                                                                   const FeatureTable& table) {
  std::vector<std::pair<AllophoneRule, Segment>> out;
  for (const auto& rule : inv.rules) {
    if (rule.base == base.ipa) out.emplace_back(rule, resolve_segment(table, rule.realized));
  }
  return out;
}

bool rule_is_consistent(const AllophoneRule& rule, const FeatureTable& table) {
  FeatureVector shifted = table.at(rule.base);
  for (const auto& name : rule.transformations) shifted = apply_transformation(shifted, name);
  const auto& realized = table.at(rule.realized);
  for (const auto& name : rule.transformations) {
    for (const auto& [feature, mark] : find_transformation(name)->deltas) {
      (void)mark;
      if (shifted.at(feature) != realized.at(feature)) return false;
    }
  }
  return true;
}

}  // namespace phonapprox
