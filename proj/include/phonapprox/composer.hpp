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

// Compositional approximation of L2 segments by L1 segment sequences.
//
// Vowels: an ordered pair (v1, v2) of L1 vowels composes a vector that takes
// backness from v1, height from v2 and rounding from either. Pairs whose
// composition matches the target on all five identity features are ranked
// by how far each source vowel is from the target.
//
// Consonants: an L1 consonant placed in the environment of one of its
// allophone rules surfaces as the rule's realized allophone. Candidates are
// ranked by the realized allophone's residual distance to the target, then
// by how many accompanying segments the learner has to produce.

#include <optional>
#include <string>
#include <vector>

#include "phonapprox/features.hpp"
#include "phonapprox/inventory.hpp"
#include "phonapprox/ipa.hpp"
#include "phonapprox/transformations.hpp"

namespace phonapprox {

// How the two source-vowel distances combine into the ranking key.
enum class RankingMode { sum, max, lexicographic };

struct ComposerConfig {
  int residual_threshold = 2;
  RankingMode ranking = RankingMode::sum;
  bool allow_self_pairs = false;
};

const std::vector<std::string>& vowel_identity_features();

// Backness from v1, height from v2, round = OR; the other 17 features unspecified.
FeatureVector compose_vowels(const Segment& v1, const Segment& v2);

struct VowelComposition {
  Segment v1;
  Segment v2;
  FeatureVector composed;
  int cost = 0;  // distance(v1, target) + distance(v2, target)
  int v1_distance = 0;
  int v2_distance = 0;
};

enum class SequenceRole { epenthetic, trigger, base };

struct SequenceItem {
  Segment segment;
  SequenceRole role;
};

struct ConsonantComposition {
  Segment base;
  AllophoneRule rule;
  std::size_t rule_index = 0;
  // Articulation order: epenthetic vowel, pre-context, base, post-context.
  std::vector<SequenceItem> sequence;
  FeatureVector realized_vector;
  int residual = 0;

  std::size_t accompanying() const { return sequence.size() - 1; }
};

enum class Decision { exact_match, composite, skip };

struct CpaResult {
  ApproxTarget target;
  SegmentClass target_class = SegmentClass::consonant;
  Decision decision = Decision::skip;
  std::optional<Segment> matched;  // the L1 segment, for exact_match
  std::vector<VowelComposition> vowel_candidates;
  std::vector<ConsonantComposition> consonant_candidates;

  // Top candidate as "/a/ + /b/"; "/x/" for exact matches; empty for skip.
  std::string approximation() const;
};

std::vector<VowelComposition> approximate_vowel(const Segment& target, const Inventory& inventory,
                                                const ComposerConfig& config = {});

std::vector<ConsonantComposition> approximate_consonant(const Segment& target, Position position,
                                                        const Inventory& inventory,
                                                        const FeatureTable& table,
                                                        const ComposerConfig& config = {});

CpaResult gate(const ApproxTarget& target, const Inventory& inventory, const FeatureTable& table,
               const ComposerConfig& config = {});

// "/ɨl/ + /ɾ/": an epenthetic vowel and a following pre-context segment
// share one syllable; every other item stands alone.
std::string format_sequence(const std::vector<SequenceItem>& sequence);

std::string_view decision_name(Decision d);
std::string_view role_name(SequenceRole r);
std::string_view ranking_name(RankingMode m);
std::optional<RankingMode> parse_ranking(std::string_view text);

}  // namespace phonapprox
