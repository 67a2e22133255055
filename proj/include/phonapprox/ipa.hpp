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

#include <string>
#include <string_view>
#include <vector>

#include "phonapprox/features.hpp"

namespace phonapprox {

enum class SegmentClass { vowel, consonant };

struct Segment {
  std::string ipa;
  FeatureVector vector;
  SegmentClass cls;

  bool is_vowel() const noexcept { return cls == SegmentClass::vowel; }
  bool operator==(const Segment& other) const { return ipa == other.ipa && vector == other.vector; }
};

// Class follows [syllabic]: vowel iff the mark is plus.
Segment make_segment(std::string ipa, FeatureVector vector);

// Looks the symbol up in the table; throws DataError when absent.
Segment resolve_segment(const FeatureTable& table, std::string_view ipa);

std::string nfc(std::string_view utf8);

// Greedy longest-match segmentation against the table keys, left to right.
// Whitespace and the delimiters '/', '[' and ']' are skipped. Offsets in
// IpaParseError refer to the NFC-normalized text.
std::vector<Segment> parse_ipa(std::string_view text, const FeatureTable& table);

}  // namespace phonapprox
