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

// JSON shapes exchanged between the command-line stages.
//
// A word document carries one CpaResult per parsed segment; rendering reads
// that document back and writes a cue document. Objects keep insertion
// order so repeated runs produce byte-identical text.

#include <string>
#include <vector>

#include <json.hpp>

#include "phonapprox/composer.hpp"
#include "phonapprox/grapheme.hpp"

namespace phonapprox {

using Json = nlohmann::ordered_json;

struct WordResult {
  std::string word;  // label, defaults to the IPA text
  std::string ipa;
  std::vector<CpaResult> segments;

  bool operator==(const WordResult&) const = default;
};

// Equality on everything the JSON shape carries.
bool operator==(const VowelComposition& a, const VowelComposition& b);
bool operator==(const ConsonantComposition& a, const ConsonantComposition& b);
bool operator==(const SequenceItem& a, const SequenceItem& b);
bool operator==(const CpaResult& a, const CpaResult& b);

Json to_json(const CpaResult& result);
Json to_json(const WordResult& word);
Json to_json(const GraphemeCue& cue);

// Segments are re-resolved against the table, so vectors are restored
// exactly. Malformed documents raise DataError.
CpaResult cpa_result_from_json(const Json& j, const FeatureTable& table);
WordResult word_result_from_json(const Json& j, const FeatureTable& table);
GraphemeCue cue_from_json(const Json& j);

// Rounds to three decimals so printed reports stay stable.
double round3(double value);

// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace phonapprox
