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

#include "phonapprox/json_io.hpp"

#include <cmath>

#include "phonapprox/error.hpp"

namespace phonapprox {

bool operator==(const VowelComposition& a, const VowelComposition& b) {
  return a.v1 == b.v1 && a.v2 == b.v2 && a.composed == b.composed && a.cost == b.cost &&
         a.v1_distance == b.v1_distance && a.v2_distance == b.v2_distance;
}

bool operator==(const SequenceItem& a, const SequenceItem& b) {
  return a.segment == b.segment && a.role == b.role;
}

bool operator==(const ConsonantComposition& a, const ConsonantComposition& b) {
  return a.base == b.base && a.rule == b.rule && a.rule_index == b.rule_index &&
         a.sequence == b.sequence && a.realized_vector == b.realized_vector &&
         a.residual == b.residual;
}

bool operator==(const CpaResult& a, const CpaResult& b) {
  return a.target.ipa == b.target.ipa && a.target.position == b.target.position &&
         a.target_class == b.target_class && a.decision == b.decision && a.matched == b.matched &&
         a.vowel_candidates == b.vowel_candidates &&
         a.consonant_candidates == b.consonant_candidates;
}

namespace {

std::string_view position_name(Position p) {
  return p == Position::word_initial ? "word_initial" : "other";
}

std::string_view class_name(SegmentClass c) { return c == SegmentClass::vowel ? "vowel" : "consonant"; }

Json rule_to_json(const AllophoneRule& rule) {
  Json j;
  j["base"] = rule.base;
  j["pre"] = rule.pre.to_string();
  j["post"] = rule.post.to_string();
  j["transformations"] = rule.transformations;
  j["realized"] = rule.realized;
  return j;
}

Json vowel_to_json(const VowelComposition& c) {
  Json j;
  j["approximation"] = "/" + c.v1.ipa + "/ + /" + c.v2.ipa + "/";
  j["v1"] = c.v1.ipa;
  j["v2"] = c.v2.ipa;
  j["cost"] = c.cost;
  j["v1_distance"] = c.v1_distance;
  j["v2_distance"] = c.v2_distance;
  return j;
}

Json consonant_to_json(const ConsonantComposition& c) {
  Json j;
  j["approximation"] = format_sequence(c.sequence);
  Json seq = Json::array();
  for (const auto& item : c.sequence) {
    seq.push_back(Json{{"ipa", item.segment.ipa}, {"role", role_name(item.role)}});
  }
  j["sequence"] = std::move(seq);
  j["base"] = c.base.ipa;
  j["rule_index"] = c.rule_index;
  j["rule"] = rule_to_json(c.rule);
  j["residual"] = c.residual;
  return j;
}

// Typed field access that reports the missing or mistyped key.
template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DataError(std::string("JSON: missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("JSON: field \"") + key + "\" has the wrong type");
  }
}

const Json& array_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw DataError(std::string("JSON: missing array \"") + key + "\"");
  }
  return j.at(key);
}

Segment segment_of(const FeatureTable& table, const std::string& ipa) {
  return resolve_segment(table, ipa);
}

RuleContext context_from(const std::string& text) {
  if (text == "-") return RuleContext::none();
  if (text == "V") return RuleContext::any_vowel();
  return RuleContext::segment(text);
}

AllophoneRule rule_from_json(const Json& j) {
  AllophoneRule rule;
  rule.base = field<std::string>(j, "base");
  rule.pre = context_from(field<std::string>(j, "pre"));
  rule.post = context_from(field<std::string>(j, "post"));
  rule.transformations = field<std::vector<std::string>>(j, "transformations");
  rule.realized = field<std::string>(j, "realized");
  return rule;
}

SequenceRole role_from(const std::string& s) {
  if (s == "epenthetic") return SequenceRole::epenthetic;
  if (s == "trigger") return SequenceRole::trigger;
  if (s == "base") return SequenceRole::base;
  throw DataError("JSON: unknown sequence role \"" + s + "\"");
}

}  // namespace

Json to_json(const CpaResult& r) {
  Json j;
  j["target"] = r.target.ipa;
  j["position"] = position_name(r.target.position);
  j["class"] = class_name(r.target_class);
  j["decision"] = decision_name(r.decision);
  j["approximation"] = r.approximation();
  if (r.matched) j["matched"] = r.matched->ipa;
  Json candidates = Json::array();
  for (const auto& c : r.vowel_candidates) candidates.push_back(vowel_to_json(c));
  for (const auto& c : r.consonant_candidates) candidates.push_back(consonant_to_json(c));
  j["candidates"] = std::move(candidates);
  return j;
}

Json to_json(const WordResult& w) {
  Json j;
  j["word"] = w.word;
  j["ipa"] = w.ipa;
  Json segs = Json::array();
  for (const auto& r : w.segments) segs.push_back(to_json(r));
  j["segments"] = std::move(segs);
  return j;
}

Json to_json(const GraphemeCue& cue) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : cue.blocks) {
    Json jb;
    jb["content"] = b.content;
    jb["size"] = size_name(b.size);
    jb["role"] = block_role_name(b.role);
    jb["sources"] = b.sources;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  j["text"] = cue.text_fallback();
  return j;
}

CpaResult cpa_result_from_json(const Json& j, const FeatureTable& table) {
  CpaResult r;
  r.target.ipa = field<std::string>(j, "target");
  const auto position = field<std::string>(j, "position");
  if (position == "word_initial") {
    r.target.position = Position::word_initial;
  } else if (position == "other") {
    r.target.position = Position::other;
  } else {
    throw DataError("JSON: unknown position \"" + position + "\"");
  }
  const auto cls = field<std::string>(j, "class");
  if (cls != "vowel" && cls != "consonant") throw DataError("JSON: unknown class \"" + cls + "\"");
  r.target_class = cls == "vowel" ? SegmentClass::vowel : SegmentClass::consonant;
  const auto decision = field<std::string>(j, "decision");
  if (decision == "exact_match") {
    r.decision = Decision::exact_match;
    r.matched = segment_of(table, field<std::string>(j, "matched"));
  } else if (decision == "composite") {
    r.decision = Decision::composite;
  } else if (decision == "skip") {
    r.decision = Decision::skip;
  } else {
    throw DataError("JSON: unknown decision \"" + decision + "\"");
  }
  for (const auto& c : array_field(j, "candidates")) {
    if (c.contains("v1")) {
      auto v1 = segment_of(table, field<std::string>(c, "v1"));
      auto v2 = segment_of(table, field<std::string>(c, "v2"));
      auto composed = compose_vowels(v1, v2);
      VowelComposition v{std::move(v1),          std::move(v2),
                         std::move(composed),    field<int>(c, "cost"),
                         field<int>(c, "v1_distance"), field<int>(c, "v2_distance")};
      r.vowel_candidates.push_back(std::move(v));
    } else {
      auto rule = rule_from_json(field<Json>(c, "rule"));
      auto realized = segment_of(table, rule.realized).vector;
      ConsonantComposition k{segment_of(table, field<std::string>(c, "base")),
                             std::move(rule),
                             field<std::size_t>(c, "rule_index"),
                             {},
                             std::move(realized),
                             field<int>(c, "residual")};
      for (const auto& item : array_field(c, "sequence")) {
        k.sequence.push_back({segment_of(table, field<std::string>(item, "ipa")),
                              role_from(field<std::string>(item, "role"))});
      }
      r.consonant_candidates.push_back(std::move(k));
    }
  }
  if (r.decision == Decision::composite && r.vowel_candidates.empty() &&
      r.consonant_candidates.empty()) {
    throw DataError("JSON: composite result for /" + r.target.ipa + "/ has no candidates");
  }
  return r;
}

WordResult word_result_from_json(const Json& j, const FeatureTable& table) {
  WordResult w;
  w.word = field<std::string>(j, "word");
  w.ipa = field<std::string>(j, "ipa");
  for (const auto& s : array_field(j, "segments")) w.segments.push_back(cpa_result_from_json(s, table));
  return w;
}

GraphemeCue cue_from_json(const Json& j) {
  GraphemeCue cue;
  for (const auto& b : array_field(j, "blocks")) {
    Block block;
    block.content = field<std::string>(b, "content");
    const auto size = parse_size(field<std::string>(b, "size"));
    const auto role = parse_block_role(field<std::string>(b, "role"));
    if (!size || !role) throw DataError("JSON: bad block size or role");
    block.size = *size;
    block.role = *role;
    block.sources = field<std::vector<std::string>>(b, "sources");
    cue.blocks.push_back(std::move(block));
  }
  return cue;
}

double round3(double value) {
  const double r = std::round(value * 1000.0) / 1000.0;
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace phonapprox
