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

#include "phonapprox/composer.hpp"

#include <algorithm>
#include <tuple>

#include "phonapprox/error.hpp"

namespace phonapprox {

const std::vector<std::string>& vowel_identity_features() {
  static const std::vector<std::string> names{"front", "back", "high", "low", "round"};
  return names;
}

FeatureVector compose_vowels(const Segment& v1, const Segment& v2) {
  if (!v1.is_vowel() || !v2.is_vowel()) {
    throw ContractError("compose_vowels needs two vowels, got /" + v1.ipa + "/ and /" + v2.ipa + "/");
  }
  if (!v1.vector.same_spec(v2.vector)) throw ContractError("vowels from different schemas");
  FeatureVector out(v1.vector.spec_ptr());
  out.set("front", v1.vector.at("front"));
  out.set("back", v1.vector.at("back"));
  out.set("high", v2.vector.at("high"));
  out.set("low", v2.vector.at("low"));
  const bool rounded = v1.vector.at("round") == Mark::plus || v2.vector.at("round") == Mark::plus;
  out.set("round", rounded ? Mark::plus : Mark::minus);
  return out;
}

namespace {

bool identity_match(const FeatureVector& composed, const FeatureVector& target) {
  for (const auto& f : vowel_identity_features()) {
    if (composed.at(f) != target.at(f)) return false;
  }
  return true;
}

std::pair<int, int> ranking_key(const VowelComposition& c, RankingMode mode) {
  switch (mode) {
    case RankingMode::sum:
      return {c.cost, 0};
    case RankingMode::max:
      return {std::max(c.v1_distance, c.v2_distance), 0};
    case RankingMode::lexicographic:
      return {c.v1_distance, c.v2_distance};
  }
  return {c.cost, 0};
}

}  // namespace

std::vector<VowelComposition> approximate_vowel(const Segment& target, const Inventory& inventory,
                                                const ComposerConfig& config) {
  if (!target.is_vowel()) throw ContractError("approximate_vowel target /" + target.ipa + "/ is not a vowel");
  const auto vowels = inventory.vowels();
  std::vector<VowelComposition> out;
  for (std::size_t i = 0; i < vowels.size(); ++i) {
    for (std::size_t j = 0; j < vowels.size(); ++j) {
      if (i == j && !config.allow_self_pairs) continue;
      auto composed = compose_vowels(vowels[i], vowels[j]);
      if (!identity_match(composed, target.vector)) continue;
      const int d1 = distance(vowels[i].vector, target.vector);
      const int d2 = distance(vowels[j].vector, target.vector);
      out.push_back({vowels[i], vowels[j], std::move(composed), d1 + d2, d1, d2});
    }
  }
  // Generation order is inventory order of v1 then v2, so a stable sort
  // leaves ties in that order.
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return ranking_key(a, config.ranking) < ranking_key(b, config.ranking);
  });
  return out;
}

std::vector<ConsonantComposition> approximate_consonant(const Segment& target, Position position,
                                                        const Inventory& inventory,
                                                        const FeatureTable& table,
                                                        const ComposerConfig& config) {
  if (target.is_vowel()) throw ContractError("approximate_consonant target /" + target.ipa + "/ is a vowel");
  std::vector<ConsonantComposition> out;
  for (std::size_t r = 0; r < inventory.rules.size(); ++r) {
    const auto& rule = inventory.rules[r];
    const auto* base = inventory.find(rule.base);
    if (base == nullptr) continue;
    const bool initial = position == Position::word_initial;
    if (initial && !base->word_initial) continue;

    const auto& realized = table.at(rule.realized);
    const int residual = distance(realized, target.vector);
    if (residual > config.residual_threshold) continue;

    ConsonantComposition c{base->segment, rule, r, {}, realized, residual};
    if (rule.pre.present()) {
      const InventoryEntry* pre = rule.pre.kind == RuleContext::Kind::segment
                                      ? inventory.find(rule.pre.ipa)
                                      : nullptr;
      const bool pre_is_vowel = pre != nullptr && pre->segment.is_vowel();
      if (initial && !pre_is_vowel) {
        // Nothing precedes a word-initial target; build the environment.
        const auto* epenthetic = inventory.find(inventory.epenthetic);
        if (epenthetic == nullptr) continue;
        c.sequence.push_back({epenthetic->segment, SequenceRole::epenthetic});
      }
      if (pre != nullptr) c.sequence.push_back({pre->segment, SequenceRole::trigger});
    }
    c.sequence.push_back({base->segment, SequenceRole::base});
    if (rule.post.kind == RuleContext::Kind::segment) {
      c.sequence.push_back({inventory.find(rule.post.ipa)->segment, SequenceRole::trigger});
    }
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.residual, a.accompanying()) < std::make_tuple(b.residual, b.accompanying());
  });
  return out;
}

CpaResult gate(const ApproxTarget& target, const Inventory& inventory, const FeatureTable& table,
               const ComposerConfig& config) {
  const auto* vector = table.find(target.ipa);
  if (vector == nullptr) throw DataError("target not in feature table: " + target.ipa);
  const Segment segment = make_segment(target.ipa, *vector);

  CpaResult result;
  result.target = {segment.ipa, target.position};
  result.target_class = segment.cls;
  for (const auto& entry : inventory.entries) {
    if (inventory.licensed(entry, target.position) && entry.segment.vector == segment.vector) {
      result.decision = Decision::exact_match;
      result.matched = entry.segment;
      return result;
    }
  }
  if (segment.is_vowel()) {
    result.vowel_candidates = approximate_vowel(segment, inventory, config);
    if (!result.vowel_candidates.empty()) result.decision = Decision::composite;
  } else {
    result.consonant_candidates =
        approximate_consonant(segment, target.position, inventory, table, config);
    if (!result.consonant_candidates.empty()) result.decision = Decision::composite;
  }
  return result;
}

std::string format_sequence(const std::vector<SequenceItem>& sequence) {
  std::string out;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const bool joins_previous = i > 0 && sequence[i - 1].role == SequenceRole::epenthetic &&
                                sequence[i].role == SequenceRole::trigger;
    if (joins_previous) {
      out.insert(out.size() - 1, sequence[i].segment.ipa);
      continue;
    }
    if (!out.empty()) out += " + ";
    out += "/" + sequence[i].segment.ipa + "/";
  }
  return out;
}

std::string CpaResult::approximation() const {
  switch (decision) {
    case Decision::exact_match:
      return "/" + matched->ipa + "/";
    case Decision::skip:
      return {};
    case Decision::composite:
      break;
  }
  if (!vowel_candidates.empty()) {
    const auto& top = vowel_candidates.front();
    return "/" + top.v1.ipa + "/ + /" + top.v2.ipa + "/";
  }
  return format_sequence(consonant_candidates.front().sequence);
}

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::exact_match:
      return "exact_match";
    case Decision::composite:
      return "composite";
    case Decision::skip:
      return "skip";
  }
  return "skip";
}

std::string_view role_name(SequenceRole r) {
  switch (r) {
    case SequenceRole::epenthetic:
      return "epenthetic";
    case SequenceRole::trigger:
      return "trigger";
    case SequenceRole::base:
      return "base";
  }
  return "base";
}

std::string_view ranking_name(RankingMode m) {
  switch (m) {
    case RankingMode::sum:
      return "sum";
    case RankingMode::max:
      return "max";
    case RankingMode::lexicographic:
      return "lexicographic";
  }
  return "sum";
}

std::optional<RankingMode> parse_ranking(std::string_view text) {
  if (text == "sum") return RankingMode::sum;
  if (text == "max") return RankingMode::max;
  if (text == "lexicographic") return RankingMode::lexicographic;
  return std::nullopt;
}

}  // namespace phonapprox
