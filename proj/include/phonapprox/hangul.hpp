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

// Unicode Hangul syllable arithmetic: 19 leads x 21 vowels x 28 tails
// (tail 0 = none) laid out from U+AC00.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phonapprox::hangul {

inline constexpr int kLeads = 19;
inline constexpr int kVowels = 21;
inline constexpr int kTails = 28;
inline constexpr char32_t kSyllableBase = 0xAC00;
inline constexpr int kSyllableCount = kLeads * kVowels * kTails;  // 11172
inline constexpr int kSilentLead = 11;                              // ㅇ

struct JamoTriple {
  int lead = 0;
  int vowel = 0;
  int tail = 0;
  bool operator==(const JamoTriple&) const = default;
};

// One precomposed syllable, UTF-8 encoded. Throws ContractError on bad indices.
std::string compose_syllable(const JamoTriple& t);
std::optional<JamoTriple> decompose_syllable(char32_t syllable);
// Throws ContractError unless text is exactly one precomposed syllable.
JamoTriple decompose_syllable(std::string_view utf8);

// Compatibility jamo (U+3131..U+3163) <-> indices.
std::optional<int> lead_index(char32_t jamo);
std::optional<int> vowel_index(char32_t jamo);
std::optional<int> tail_index(char32_t jamo);  // 1..27
char32_t lead_jamo(int index);
char32_t vowel_jamo(int index);
char32_t tail_jamo(int index);

// Compound vowel letter written from two simple ones (ㅗ+ㅏ -> ㅘ), if any.
std::optional<int> combine_vowels(int first, int second);
// Glide letter (ㅣ for /j/, ㅜ or ㅗ for /w/) merged with a following vowel.
std::optional<int> glide_vowel(int glide, int vowel);

// Conjoining-jamo syllable block (lead, one or more vowels, optional tail)
// for nuclei that have no precomposed form.
std::string conjoining_block(int lead, const std::vector<int>& vowels, int tail);

// Compatibility jamo making up a rendered string (precomposed syllables,
// conjoining sequences and bare compatibility jamo); other code points ignored.
std::vector<char32_t> jamo_multiset(std::string_view utf8);

std::string to_utf8(char32_t cp);
std::u32string to_utf32(std::string_view utf8);

}  // namespace phonapprox::hangul
