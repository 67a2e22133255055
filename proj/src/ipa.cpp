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

#include "phonapprox/ipa.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "phonapprox/error.hpp"

namespace phonapprox {

Segment make_segment(std::string ipa, FeatureVector vector) {
  if (ipa.empty()) throw ContractError("segment with empty IPA symbol");
  const auto cls = vector.at("syllabic") == Mark::plus ? SegmentClass::vowel : SegmentClass::consonant;
  return Segment{nfc(ipa), std::move(vector), cls};
}

Segment resolve_segment(const FeatureTable& table, std::string_view ipa) {
  const auto key = nfc(ipa);
  return make_segment(key, table.at(key));
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  const auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (normalizer->isNormalized(source, status) && U_SUCCESS(status)) return std::string(utf8);
  status = U_ZERO_ERROR;
  const auto normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw DataError("text is not NFC-normalizable");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

namespace {

bool skippable(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '/' || c == '[' || c == ']';
}

std::size_t codepoint_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::vector<Segment> parse_ipa(std::string_view text, const FeatureTable& table) {
  const std::string normalized = nfc(text);
  const std::string_view s = normalized;
  std::vector<Segment> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (skippable(s[pos])) {
      ++pos;
      continue;
    }
    const std::size_t longest = std::min(table.max_key_bytes(), s.size() - pos);
    bool matched = false;
    for (std::size_t len = longest; len > 0; --len) {
      const auto candidate = s.substr(pos, len);
      if (const auto* vector = table.find_exact(candidate)) {
        out.push_back(make_segment(std::string(candidate), *vector));
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::size_t end = pos;
      while (end < s.size() && !skippable(s[end])) {
        end += codepoint_length(static_cast<unsigned char>(s[end]));
      }
      throw IpaParseError(pos, std::string(s.substr(pos, std::min(end, s.size()) - pos)));
    }
  }
  return out;
}

}  // namespace phonapprox
