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

#include "phonapprox/grapheme.hpp"

#include <fstream>

#include "phonapprox/error.hpp"
#include "phonapprox/hangul.hpp"
#include "phonapprox/ipa.hpp"
#include "text_util.hpp"

namespace phonapprox {

std::string GraphemeCue::text_fallback() const {
  std::string out;
  for (const auto& b : blocks) {
    out += b.size == BlockSize::half ? "(" + b.content + ")" : b.content;
  }
  return out;
}

namespace {

std::optional<int> parse_jamo(std::string_view cell, std::optional<int> (*lookup)(char32_t),
                              std::size_t line) {
  cell = detail::trim(cell);
  if (cell == "-" || cell.empty()) return std::nullopt;
  const auto cps = hangul::to_utf32(cell);
  if (cps.size() != 1) throw DataError("expected one jamo, got \"" + std::string(cell) + "\"", line);
  auto index = lookup(cps[0]);
  if (!index) throw DataError("not a jamo for this slot: \"" + std::string(cell) + "\"", line);
  return index;
}

}  // namespace

JamoMap JamoMap::load(std::istream& source) {
  JamoMap map;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1) line = std::string(detail::strip_bom(line));
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto cells = detail::split(text, ',');
    if (!header) {
      if (cells.size() != 4 || detail::trim(cells[0]) != "ipa") {
        throw DataError("jamo map header must be ipa,onset,nucleus,coda", line_no);
      }
      header = true;
      continue;
    }
    if (cells.size() != 4) throw DataError("expected 4 fields", line_no);
    JamoMapping m{parse_jamo(cells[1], hangul::lead_index, line_no),
                  parse_jamo(cells[2], hangul::vowel_index, line_no),
                  parse_jamo(cells[3], hangul::tail_index, line_no)};
    if (!m.lead && !m.vowel && !m.tail) throw DataError("row maps to no jamo", line_no);
    const auto key = nfc(detail::trim(cells[0]));
    if (map.find(key)) throw DataError("duplicate jamo mapping for " + key, line_no);
    map.add(key, m);
  }
  if (!header) throw DataError("jamo map has no header");
  return map;
}

JamoMap JamoMap::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open jamo map: " + path);
  return load(in);
}

void JamoMap::add(std::string ipa, JamoMapping mapping) { map_[std::move(ipa)] = mapping; }

const JamoMapping* JamoMap::find(std::string_view ipa) const {
  const auto it = map_.find(std::string(ipa));
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

// A writable piece of the word before syllabification.
struct Unit {
  enum class Kind { consonant, nucleus, glide };
  Kind kind;
  std::vector<std::string> sources;
  std::vector<int> vowels;
  std::optional<int> lead;
  std::optional<int> tail;
  bool half = false;
  BlockRole role = BlockRole::nucleus;
};

const JamoMapping& lookup(const JamoMap& map, const std::string& ipa) {
  const auto* m = map.find(ipa);
  if (m == nullptr) throw DataError("no jamo mapping for /" + ipa + "/");
  return *m;
}

Unit make_unit(const JamoMap& map, const std::string& ipa, SegmentClass cls, bool half, BlockRole role) {
  const auto& m = lookup(map, ipa);
  Unit u{Unit::Kind::consonant, {ipa}, {}, m.lead, m.tail, half, role};
  if (cls == SegmentClass::vowel) {
    if (!m.vowel) throw DataError("vowel /" + ipa + "/ has no nucleus jamo");
    u.kind = Unit::Kind::nucleus;
    u.vowels = {*m.vowel};
  } else if (!m.lead && !m.tail) {
    if (!m.vowel) throw DataError("consonant /" + ipa + "/ has no jamo");
    u.kind = Unit::Kind::glide;
    u.vowels = {*m.vowel};
  }
  return u;
}

std::vector<Unit> flatten(std::span<const CpaResult> word, const JamoMap& map) {
  std::vector<Unit> units;
  for (const auto& r : word) {
    switch (r.decision) {
      case Decision::exact_match:
        units.push_back(make_unit(map, r.matched->ipa, r.matched->cls, false, BlockRole::nucleus));
        break;
      case Decision::skip:
        units.push_back(make_unit(map, r.target.ipa, r.target_class, false, BlockRole::nucleus));
        break;
      case Decision::composite:
        if (!r.vowel_candidates.empty()) {
          const auto& top = r.vowel_candidates.front();
          Unit u = make_unit(map, top.v1.ipa, SegmentClass::vowel, false, BlockRole::nucleus);
          const Unit second = make_unit(map, top.v2.ipa, SegmentClass::vowel, false, BlockRole::nucleus);
          u.sources.push_back(second.sources.front());
          u.vowels.push_back(second.vowels.front());
          units.push_back(std::move(u));
        } else {
          for (const auto& item : r.consonant_candidates.front().sequence) {
            const bool half = item.role != SequenceRole::base;
            const auto role = item.role == SequenceRole::epenthetic ? BlockRole::epenthetic
                              : item.role == SequenceRole::trigger  ? BlockRole::trigger
                                                                    : BlockRole::nucleus;
            units.push_back(make_unit(map, item.segment.ipa, item.segment.cls, half, role));
          }
        }
        break;
    }
  }
  return units;
}

// Glide + single vowel -> one nucleus when Hangul has the letter; a glide
// left on its own is written with its vowel letter.
std::vector<Unit> merge_glides(std::vector<Unit> run) {
  std::vector<Unit> out;
  for (std::size_t i = 0; i < run.size(); ++i) {
    Unit u = std::move(run[i]);
    if (u.kind == Unit::Kind::glide) {
      if (i + 1 < run.size() && run[i + 1].kind == Unit::Kind::nucleus) {
        auto& next = run[i + 1];
        if (auto merged = hangul::glide_vowel(u.vowels.front(), next.vowels.front())) {
          next.vowels.front() = *merged;
          next.sources.insert(next.sources.begin(), u.sources.begin(), u.sources.end());
          continue;
        }
      }
      u.kind = Unit::Kind::nucleus;
    }
    out.push_back(std::move(u));
  }
  return out;
}

struct Syllable {
  std::optional<int> lead;
  std::vector<int> vowels;
  int tail = 0;
  std::vector<std::string> sources;
  bool epenthetic = false;
};

std::string syllable_content(const Syllable& s) {
  const int lead = s.lead.value_or(hangul::kSilentLead);
  std::vector<int> vowels = s.vowels;
  if (vowels.size() == 2) {
    if (auto compound = hangul::combine_vowels(vowels[0], vowels[1])) vowels = {*compound};
  }
  if (vowels.size() == 1) return hangul::compose_syllable({lead, vowels.front(), s.tail});
  return hangul::conjoining_block(lead, vowels, s.tail);
}

void syllabify_run(const std::vector<Unit>& run, bool half, std::vector<Block>& out) {
  std::optional<Syllable> current;
  auto block_role = [&](bool epenthetic) {
    if (!half) return BlockRole::nucleus;
    return epenthetic ? BlockRole::epenthetic : BlockRole::trigger;
  };
  auto flush = [&] {
    if (!current) return;
    if (current->vowels.empty()) {
      // An onset whose vowel never came: write the bare letter.
      out.push_back({hangul::to_utf8(hangul::lead_jamo(*current->lead)),
                     half ? BlockSize::half : BlockSize::full, block_role(current->epenthetic),
                     current->sources});
    } else {
      out.push_back({syllable_content(*current), half ? BlockSize::half : BlockSize::full,
                     block_role(current->epenthetic), current->sources});
    }
    current.reset();
  };
  for (std::size_t i = 0; i < run.size(); ++i) {
    const Unit& u = run[i];
    const bool epenthetic = u.role == BlockRole::epenthetic;
    if (u.kind == Unit::Kind::nucleus) {
      if (!current || !current->vowels.empty()) {
        flush();
        current.emplace();
      }
      current->vowels.insert(current->vowels.end(), u.vowels.begin(), u.vowels.end());
      current->sources.insert(current->sources.end(), u.sources.begin(), u.sources.end());
      current->epenthetic = current->epenthetic || epenthetic;
      continue;
    }
    const bool vowel_follows = i + 1 < run.size() && run[i + 1].kind == Unit::Kind::nucleus;
    if (vowel_follows && u.lead) {
      flush();
      current.emplace();
      current->lead = u.lead;
      current->sources = u.sources;
      current->epenthetic = epenthetic;
      continue;
    }
    if (current && !current->vowels.empty() && current->tail == 0 && u.tail) {
      current->tail = *u.tail;
      current->sources.insert(current->sources.end(), u.sources.begin(), u.sources.end());
      continue;
    }
    flush();
    const char32_t letter = u.lead ? hangul::lead_jamo(*u.lead) : hangul::tail_jamo(*u.tail);
    out.push_back({hangul::to_utf8(letter), half ? BlockSize::half : BlockSize::full,
                   block_role(epenthetic), u.sources});
  }
  flush();
}

}  // namespace

GraphemeCue render_cue(std::span<const CpaResult> word, const JamoMap& mapping) {
  const auto units = flatten(word, mapping);
  GraphemeCue cue;
  std::size_t i = 0;
  while (i < units.size()) {
    const bool half = units[i].half;
    std::vector<Unit> run;
    while (i < units.size() && units[i].half == half) run.push_back(units[i++]);
    syllabify_run(merge_glides(std::move(run)), half, cue.blocks);
  }
  return cue;
}

std::string_view size_name(BlockSize s) { return s == BlockSize::full ? "full" : "half"; }

std::string_view block_role_name(BlockRole r) {
  switch (r) {
    case BlockRole::nucleus:
      return "nucleus";
    case BlockRole::epenthetic:
      return "epenthetic";
    case BlockRole::trigger:
      return "trigger";
  }
  return "nucleus";
}

std::optional<BlockSize> parse_size(std::string_view s) {
  if (s == "full") return BlockSize::full;
  if (s == "half") return BlockSize::half;
  return std::nullopt;
}

std::optional<BlockRole> parse_block_role(std::string_view s) {
  if (s == "nucleus") return BlockRole::nucleus;
  if (s == "epenthetic") return BlockRole::epenthetic;
  if (s == "trigger") return BlockRole::trigger;
  return std::nullopt;
}

}  // namespace phonapprox
