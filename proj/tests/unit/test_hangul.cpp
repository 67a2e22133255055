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

// Hangul syllable arithmetic and jamo tables.

#include <doctest.h>

#include <set>

#include "phonapprox/error.hpp"
#include "phonapprox/hangul.hpp"

using namespace phonapprox;
using namespace phonapprox::hangul;

namespace {

JamoTriple triple(char32_t lead, char32_t vowel, char32_t tail = 0) {
  return {*lead_index(lead), *vowel_index(vowel), tail == 0 ? 0 : *tail_index(tail)};
}

}  // namespace

TEST_CASE("composition matches the KOR column spellings") {
  CHECK(compose_syllable(triple(U'ㄷ', U'ㅗ', U'ㄴ')) == "돈");
  CHECK(compose_syllable(triple(U'ㅂ', U'ㅗ', U'ㄹ')) == "볼");
  CHECK(compose_syllable(triple(U'ㅇ', U'ㅡ')) == "으");
  CHECK(decompose_syllable(std::string_view("돈")) == triple(U'ㄷ', U'ㅗ', U'ㄴ'));
}

TEST_CASE("compose and decompose are inverse over all 11172 syllables") {
  std::set<std::string> seen;
  int count = 0;
  for (int l = 0; l < kLeads; ++l) {
    for (int v = 0; v < kVowels; ++v) {
      for (int t = 0; t < kTails; ++t) {
        const JamoTriple in{l, v, t};
        const auto s = compose_syllable(in);
        const auto cps = to_utf32(s);
        REQUIRE(cps.size() == 1);
        CHECK(cps[0] == kSyllableBase + static_cast<char32_t>(count));
        CHECK(decompose_syllable(cps[0]) == in);
        seen.insert(s);
        ++count;
      }
    }
  }
  CHECK(count == kSyllableCount);
  CHECK(seen.size() == 11172u);
  for (char32_t cp = kSyllableBase; cp < kSyllableBase + kSyllableCount; ++cp) {
    const auto t = decompose_syllable(cp);
    REQUIRE(t.has_value());
    CHECK(to_utf32(compose_syllable(*t)) == std::u32string(1, cp));
  }
  CHECK_FALSE(decompose_syllable(kSyllableBase - 1).has_value());
  CHECK_FALSE(decompose_syllable(kSyllableBase + kSyllableCount).has_value());
}

TEST_CASE("out-of-range indices are rejected") {
  CHECK_THROWS_AS(compose_syllable({kLeads, 0, 0}), ContractError);
  CHECK_THROWS_AS(compose_syllable({0, kVowels, 0}), ContractError);
  CHECK_THROWS_AS(compose_syllable({0, 0, kTails}), ContractError);
  CHECK_THROWS_AS(compose_syllable({-1, 0, 0}), ContractError);
  CHECK_THROWS_AS(decompose_syllable(std::string_view("ab")), ContractError);
}

TEST_CASE("jamo tables round-trip through their indices") {
  for (int i = 0; i < kLeads; ++i) CHECK(lead_index(lead_jamo(i)) == i);
  for (int i = 0; i < kVowels; ++i) CHECK(vowel_index(vowel_jamo(i)) == i);
  for (int i = 1; i < kTails; ++i) CHECK(tail_index(tail_jamo(i)) == i);
  CHECK_FALSE(lead_index(U'ㅏ').has_value());
  CHECK_FALSE(tail_index(U'ㄸ').has_value());
}

TEST_CASE("compound vowels and glide merges follow Hangul letter formation") {
  auto v = [](char32_t c) { return *vowel_index(c); };
  CHECK(combine_vowels(v(U'ㅗ'), v(U'ㅏ')) == v(U'ㅘ'));
  CHECK(combine_vowels(v(U'ㅜ'), v(U'ㅓ')) == v(U'ㅝ'));
  CHECK(combine_vowels(v(U'ㅡ'), v(U'ㅣ')) == v(U'ㅢ'));
  CHECK_FALSE(combine_vowels(v(U'ㅐ'), v(U'ㅏ')).has_value());
  CHECK_FALSE(combine_vowels(v(U'ㅗ'), v(U'ㅓ')).has_value());
  CHECK(glide_vowel(v(U'ㅣ'), v(U'ㅏ')) == v(U'ㅑ'));
  CHECK(glide_vowel(v(U'ㅣ'), v(U'ㅜ')) == v(U'ㅠ'));
  CHECK(glide_vowel(v(U'ㅜ'), v(U'ㅓ')) == v(U'ㅝ'));
  CHECK_FALSE(glide_vowel(v(U'ㅣ'), v(U'ㅣ')).has_value());
}

TEST_CASE("conjoining blocks stack vowels that have no compound letter") {
  auto v = [](char32_t c) { return *vowel_index(c); };
  const auto block = conjoining_block(*lead_index(U'ㅇ'), {v(U'ㅐ'), v(U'ㅏ')}, *tail_index(U'ㄴ'));
  CHECK(to_utf32(block) == std::u32string{0x110B, 0x1162, 0x1161, 0x11AB});
  CHECK(jamo_multiset(block) == std::vector<char32_t>{U'ㄴ', U'ㅇ', U'ㅏ', U'ㅐ'});
  CHECK(jamo_multiset("돈(으)") == std::vector<char32_t>{U'ㄴ', U'ㄷ', U'ㅇ', U'ㅗ', U'ㅡ'});
}
