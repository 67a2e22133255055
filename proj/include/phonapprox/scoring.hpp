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

// Evaluation arithmetic over externally produced data: phoneme accuracy of
// decoded transcripts, and CPA win rates from pairwise preference verdicts.

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace phonapprox::scoring {

struct Target {
  std::size_t index = 0;
  std::string symbol;      // must equal reference[index]
  bool word_initial = false;  // written "sym*" in the targets column

  // Report row label: the symbol, with '*' for word-initial targets.
  std::string label() const { return word_initial ? symbol + "*" : symbol; }
};

struct TranscriptRecord {
  std::string utterance_id;
  std::vector<std::string> reference;
  std::vector<std::string> decoded;
  std::vector<Target> targets;
  std::string condition;  // empty when the input has no condition column
};

// Throws DataError for empty sequences, out-of-range target indices or a
// target symbol that differs from the reference symbol at its index.
void validate(const TranscriptRecord& record);

// Header "utterance_id,reference,decoded,targets" with an optional trailing
// "condition" column. Sequences are space-separated IPA; targets are
// "index:symbol" pairs joined by ';'.
std::vector<TranscriptRecord> load_transcripts(std::istream& source);
std::vector<TranscriptRecord> load_transcripts_file(const std::string& path);

// Minimum edit distance alignment with unit costs. Entry i is the decoded
// index aligned to reference[i] (match or substitution) or nullopt when
// reference[i] is deleted. The traceback runs from the end and prefers the
// diagonal, then a deletion, then an insertion, which keeps substitutions
// over indel pairs and pushes indels toward the left.
std::vector<std::optional<std::size_t>> align(std::span<const std::string> reference,
                                              std::span<const std::string> decoded);

int edit_distance(std::span<const std::string> reference, std::span<const std::string> decoded);

struct AccuracyCell {
  std::size_t targets = 0;
  std::size_t correct = 0;

  double percent() const { return targets == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(targets); }
};

struct AccuracyRow {
  std::string label;
  std::vector<AccuracyCell> cells;  // one per condition
};

struct AccuracyReport {
  std::vector<std::string> conditions;  // first-appearance order
  std::vector<AccuracyRow> rows;         // first-appearance order of target labels
  std::vector<AccuracyCell> totals;      // pooled over every target, per condition
};

// Throws DataError on an empty record list or an invalid record.
AccuracyReport phoneme_accuracy(std::span<const TranscriptRecord> records);

enum class Side { cpa, other };
enum class Winner { first, second };

struct JudgeRecord {
  std::string word;
  std::string participant;
  Side first = Side::cpa;
  Winner winner = Winner::first;
  std::string opponent;  // empty when the input has no opponent column

  bool cpa_won() const { return (first == Side::cpa) == (winner == Winner::first); }
};

// Header "word,participant,first,winner" with an optional trailing
// "opponent" column. first is cpa|other, winner is first|second.
std::vector<JudgeRecord> load_judgments(std::istream& source);
std::vector<JudgeRecord> load_judgments_file(const std::string& path);

struct WinCell {
  std::string opponent;
  std::string word;
  std::string participant;
  std::size_t judgments = 0;
  std::size_t cpa_wins = 0;
  std::size_t cpa_first = 0;  // judgments that presented CPA first
  bool balanced = true;       // both presentation orders equally often

  double percent() const { return judgments == 0 ? 0.0 : 100.0 * static_cast<double>(cpa_wins) / static_cast<double>(judgments); }
};

struct WinRateGroup {
  std::string opponent;
  std::vector<WinCell> cells;   // first-appearance order of (word, participant)
  double overall = 0.0;         // mean cell rate over balanced cells
  std::size_t balanced_cells = 0;
  std::size_t cells_above_50 = 0;
  std::size_t cells_below_50 = 0;
};

// One group per opponent, in first-appearance order. Unbalanced cells are
// kept in the listing with balanced = false and left out of the overall.
// Throws DataError on an empty list.
std::vector<WinRateGroup> win_rates(std::span<const JudgeRecord> records);

}  // namespace phonapprox::scoring
