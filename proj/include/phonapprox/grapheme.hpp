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

// Hangul cue rendering. Composite vowels are written as one nucleus block
// carrying both vowel letters; the epenthetic vowel and the conditioning
// (trigger) segments of consonant composites go into adjacent half-size
// blocks; everything else is syllabified into ordinary full-size blocks.

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonapprox/composer.hpp"

namespace phonapprox {

enum class BlockSize { full, half };
enum class BlockRole { nucleus, epenthetic, trigger };

struct Block {
  std::string content;  // precomposed syllable, conjoining sequence, or a bare jamo
  BlockSize size = BlockSize::full;
  BlockRole role = BlockRole::nucleus;
  std::vector<std::string> sources;  // IPA of the segments written in this block

  bool operator==(const Block&) const = default;
};

struct GraphemeCue {
  std::vector<Block> blocks;

  // Plain-text rendering: half-size blocks demoted to "(...)".
  std::string text_fallback() const;
  bool operator==(const GraphemeCue&) const = default;
};

struct JamoMapping {
  std::optional<int> lead;
  std::optional<int> vowel;
  std::optional<int> tail;
};

// CSV "ipa,onset,nucleus,coda" with compatibility jamo or "-".
class JamoMap {
 public:
  static JamoMap load(std::istream& source);
  static JamoMap load_file(const std::string& path);

  void add(std::string ipa, JamoMapping mapping);
  const JamoMapping* find(std::string_view ipa) const;
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::unordered_map<std::string, JamoMapping> map_;
};

// Renders the per-segment results of one word, in order. Throws DataError
// naming the first segment that has no jamo mapping.
GraphemeCue render_cue(std::span<const CpaResult> word, const JamoMap& mapping);

std::string_view size_name(BlockSize s);
std::string_view block_role_name(BlockRole r);
std::optional<BlockSize> parse_size(std::string_view s);
std::optional<BlockRole> parse_block_role(std::string_view s);

}  // namespace phonapprox
