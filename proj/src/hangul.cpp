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

#include "phonapprox/hangul.hpp"

#include <algorithm>
#include <array>

#include "phonapprox/error.hpp"

namespace phonapprox::hangul {
namespace {

constexpr std::array<char32_t, kLeads> kLeadJamo{
    U'ㄱ', U'ㄲ', U'ㄴ', U'ㄷ', U'ㄸ', U'ㄹ', U'ㅁ', U'ㅂ', U'ㅃ', U'ㅅ',
    U'ㅆ', U'ㅇ', U'ㅈ', U'ㅉ', U'ㅊ', U'ㅋ', U'ㅌ', U'ㅍ', U'ㅎ'};
constexpr std::array<char32_t, kVowels> kVowelJamo{
    U'ㅏ', U'ㅐ', U'ㅑ', U'ㅒ', U'ㅓ', U'ㅔ', U'ㅕ', U'ㅖ', U'ㅗ', U'ㅘ', U'ㅙ',
    U'ㅚ', U'ㅛ', U'ㅜ', U'ㅝ', U'ㅞ', U'ㅟ', U'ㅠ', U'ㅡ', U'ㅢ', U'ㅣ'};
// Index 0 is "no tail".
constexpr std::array<char32_t, kTails> kTailJamo{
    0,     U'ㄱ', U'ㄲ', U'ㄳ', U'ㄴ', U'ㄵ', U'ㄶ', U'ㄷ', U'ㄹ', U'ㄺ',
    U'ㄻ', U'ㄼ', U'ㄽ', U'ㄾ', U'ㄿ', U'ㅀ', U'ㅁ', U'ㅂ', U'ㅄ', U'ㅅ',
    U'ㅆ', U'ㅇ', U'ㅈ', U'ㅊ', U'ㅋ', U'ㅌ', U'ㅍ', U'ㅎ'};

constexpr char32_t kConjoiningLead = 0x1100;
constexpr char32_t kConjoiningVowel = 0x1161;
constexpr char32_t kConjoiningTail = 0x11A7;

template <std::size_t N>
std::optional<int> index_in(const std::array<char32_t, N>& table, char32_t jamo, int from = 0) {
  for (std::size_t i = static_cast<std::size_t>(from); i < N; ++i) {
    if (table[i] == jamo) return static_cast<int>(i);
  }
  return std::nullopt;
}

int vowel_of(char32_t jamo) { return *index_in(kVowelJamo, jamo); }

}  // namespace

std::string to_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::u32string to_utf32(std::string_view s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = c;
    if (c >= 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else if (c >= 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if (c >= 0xC0) {
      len = 2;
      cp = c & 0x1F;
    }
    if (i + len > s.size()) throw DataError("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string compose_syllable(const JamoTriple& t) {
  if (t.lead < 0 || t.lead >= kLeads || t.vowel < 0 || t.vowel >= kVowels || t.tail < 0 ||
      t.tail >= kTails) {
    throw ContractError("jamo index out of range (" + std::to_string(t.lead) + ", " +
                        std::to_string(t.vowel) + ", " + std::to_string(t.tail) + ")");
  }
  const auto cp = kSyllableBase + static_cast<char32_t>((t.lead * kVowels + t.vowel) * kTails + t.tail);
  return to_utf8(cp);
}

std::optional<JamoTriple> decompose_syllable(char32_t syllable) {
  if (syllable < kSyllableBase || syllable >= kSyllableBase + kSyllableCount) return std::nullopt;
  const int offset = static_cast<int>(syllable - kSyllableBase);
  return JamoTriple{offset / (kVowels * kTails), (offset % (kVowels * kTails)) / kTails,
                    offset % kTails};
}

JamoTriple decompose_syllable(std::string_view utf8) {
  const auto cps = to_utf32(utf8);
  if (cps.size() == 1) {
    if (auto t = decompose_syllable(cps[0])) return *t;
  }
  throw ContractError("not a single precomposed Hangul syllable: " + std::string(utf8));
}

std::optional<int> lead_index(char32_t jamo) { return index_in(kLeadJamo, jamo); }
std::optional<int> vowel_index(char32_t jamo) { return index_in(kVowelJamo, jamo); }
std::optional<int> tail_index(char32_t jamo) { return index_in(kTailJamo, jamo, 1); }
char32_t lead_jamo(int index) { return kLeadJamo.at(static_cast<std::size_t>(index)); }
char32_t vowel_jamo(int index) { return kVowelJamo.at(static_cast<std::size_t>(index)); }
char32_t tail_jamo(int index) { return kTailJamo.at(static_cast<std::size_t>(index)); }

std::optional<int> combine_vowels(int first, int second) {
  struct Rule {
    char32_t a, b, out;
  };
  static constexpr Rule kCompounds[] = {
      {U'ㅗ', U'ㅏ', U'ㅘ'}, {U'ㅗ', U'ㅐ', U'ㅙ'}, {U'ㅗ', U'ㅣ', U'ㅚ'}, {U'ㅜ', U'ㅓ', U'ㅝ'},
      {U'ㅜ', U'ㅔ', U'ㅞ'}, {U'ㅜ', U'ㅣ', U'ㅟ'}, {U'ㅡ', U'ㅣ', U'ㅢ'}};
  for (const auto& r : kCompounds) {
    if (vowel_jamo(first) == r.a && vowel_jamo(second) == r.b) return vowel_of(r.out);
  }
  return std::nullopt;
}

std::optional<int> glide_vowel(int glide, int vowel) {
  struct Rule {
    char32_t glide, vowel, out;
  };
  static constexpr Rule kGlides[] = {
      {U'ㅣ', U'ㅏ', U'ㅑ'}, {U'ㅣ', U'ㅐ', U'ㅒ'}, {U'ㅣ', U'ㅓ', U'ㅕ'}, {U'ㅣ', U'ㅔ', U'ㅖ'},
      {U'ㅣ', U'ㅗ', U'ㅛ'}, {U'ㅣ', U'ㅜ', U'ㅠ'}, {U'ㅜ', U'ㅏ', U'ㅘ'}, {U'ㅜ', U'ㅐ', U'ㅙ'},
      {U'ㅜ', U'ㅓ', U'ㅝ'}, {U'ㅜ', U'ㅔ', U'ㅞ'}, {U'ㅜ', U'ㅣ', U'ㅟ'}, {U'ㅗ', U'ㅏ', U'ㅘ'},
      {U'ㅗ', U'ㅐ', U'ㅙ'}};
  for (const auto& r : kGlides) {
    if (vowel_jamo(glide) == r.glide && vowel_jamo(vowel) == r.vowel) return vowel_of(r.out);
  }
  return std::nullopt;
}

std::string conjoining_block(int lead, const std::vector<int>& vowels, int tail) {
  if (lead < 0 || lead >= kLeads || tail < 0 || tail >= kTails || vowels.empty()) {
    throw ContractError("invalid conjoining block");
  }
  std::string out = to_utf8(kConjoiningLead + static_cast<char32_t>(lead));
  for (int v : vowels) {
    if (v < 0 || v >= kVowels) throw ContractError("vowel index out of range");
    out += to_utf8(kConjoiningVowel + static_cast<char32_t>(v));
  }
  if (tail > 0) out += to_utf8(kConjoiningTail + static_cast<char32_t>(tail));
  return out;
}

std::vector<char32_t> jamo_multiset(std::string_view utf8) {
  std::vector<char32_t> out;
  for (char32_t cp : to_utf32(utf8)) {
    if (auto t = decompose_syllable(cp)) {
      out.push_back(lead_jamo(t->lead));
      out.push_back(vowel_jamo(t->vowel));
      if (t->tail > 0) out.push_back(tail_jamo(t->tail));
    } else if (cp >= kConjoiningLead && cp < kConjoiningLead + kLeads) {
      out.push_back(lead_jamo(static_cast<int>(cp - kConjoiningLead)));
    } else if (cp >= kConjoiningVowel && cp < kConjoiningVowel + kVowels) {
      out.push_back(vowel_jamo(static_cast<int>(cp - kConjoiningVowel)));
    } else if (cp > kConjoiningTail && cp < kConjoiningTail + kTails) {
      out.push_back(tail_jamo(static_cast<int>(cp - kConjoiningTail)));
    } else if (cp >= 0x3131 && cp <= 0x3163) {
      out.push_back(cp);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace phonapprox::hangul
