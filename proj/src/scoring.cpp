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

#include "phonapprox/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "phonapprox/error.hpp"
#include "phonapprox/ipa.hpp"
#include "text_util.hpp"

namespace phonapprox::scoring {

namespace {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

std::string unquote(std::string_view cell) {
  cell = detail::trim(cell);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
  return std::string(cell);
}

CsvTable read_csv(std::istream& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    std::string_view text = line;
    if (line_no == 1) text = detail::strip_bom(text);
    text = detail::trim(text);
    if (text.empty() || text.front() == '#') continue;
    std::vector<std::string> cells;
    for (auto cell : detail::split(text, ',')) cells.push_back(unquote(cell));
    if (table.header.empty()) {
      table.header = std::move(cells);
    } else {
      table.rows.push_back({line_no, std::move(cells)});
    }
  }
  return table;
}

bool header_is(const std::vector<std::string>& header, std::initializer_list<const char*> names) {
  if (header.size() != names.size()) return false;
  return std::equal(header.begin(), header.end(), names.begin(),
                    [](const std::string& a, const char* b) { return a == b; });
}

std::vector<std::string> symbols(std::string_view text) {
  std::vector<std::string> out;
  for (auto s : detail::split_ws(text)) out.push_back(nfc(s));
  return out;
}

}  // namespace

void validate(const TranscriptRecord& r) {
  if (r.reference.empty()) throw DataError("utterance " + r.utterance_id + ": empty reference sequence");
  if (r.decoded.empty()) throw DataError("utterance " + r.utterance_id + ": empty decoded sequence");
  if (r.targets.empty()) throw DataError("utterance " + r.utterance_id + ": no targets");
  for (const auto& t : r.targets) {
    if (t.index >= r.reference.size()) {
      throw DataError("utterance " + r.utterance_id + ": target index " + std::to_string(t.index) +
                      " outside the reference");
    }
    if (r.reference[t.index] != t.symbol) {
      throw DataError("utterance " + r.utterance_id + ": target /" + t.symbol + "/ does not match reference /" +
                      r.reference[t.index] + "/ at index " + std::to_string(t.index));
    }
  }
}

std::vector<TranscriptRecord> load_transcripts(std::istream& source) {
  const auto table = read_csv(source);
  const bool with_condition = header_is(table.header, {"utterance_id", "reference", "decoded", "targets", "condition"});
  if (!with_condition && !header_is(table.header, {"utterance_id", "reference", "decoded", "targets"})) {
    throw DataError("transcript header must be utterance_id,reference,decoded,targets[,condition]", 1);
  }
  std::vector<TranscriptRecord> out;
  for (const auto& row : table.rows) {
    if (row.cells.size() != table.header.size()) {
      throw DataError("expected " + std::to_string(table.header.size()) + " fields", row.line);
    }
    TranscriptRecord r;
    r.utterance_id = row.cells[0];
    r.reference = symbols(row.cells[1]);
    r.decoded = symbols(row.cells[2]);
    for (auto item : detail::split(row.cells[3], ';')) {
      item = detail::trim(item);
      if (item.empty()) continue;
      const auto colon = item.find(':');
      const auto index = colon == std::string_view::npos ? std::nullopt : detail::parse_long(item.substr(0, colon));
      if (!index || *index < 0) throw DataError("bad target \"" + std::string(item) + "\" (want index:symbol)", row.line);
      Target t;
      t.index = static_cast<std::size_t>(*index);
      auto symbol = detail::trim(item.substr(colon + 1));
      if (!symbol.empty() && symbol.back() == '*') {
        t.word_initial = true;
        symbol.remove_suffix(1);
      }
      t.symbol = nfc(symbol);
      r.targets.push_back(std::move(t));
    }
    if (with_condition) r.condition = row.cells[4];
    try {
      validate(r);
    } catch (const DataError& e) {
      throw DataError(e.what(), row.line);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TranscriptRecord> load_transcripts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open transcript file: " + path);
  try {
    return load_transcripts(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

std::vector<std::vector<int>> cost_matrix(std::span<const std::string> ref, std::span<const std::string> dec) {
  std::vector<std::vector<int>> d(ref.size() + 1, std::vector<int>(dec.size() + 1, 0));
  for (std::size_t i = 0; i <= ref.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= dec.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= dec.size(); ++j) {
      const int diag = d[i - 1][j - 1] + (ref[i - 1] == dec[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d;
}

}  // namespace

int edit_distance(std::span<const std::string> reference, std::span<const std::string> decoded) {
  return cost_matrix(reference, decoded)[reference.size()][decoded.size()];
}

std::vector<std::optional<std::size_t>> align(std::span<const std::string> ref,
                                              std::span<const std::string> dec) {
  const auto d = cost_matrix(ref, dec);
  std::vector<std::optional<std::size_t>> out(ref.size());
  std::size_t i = ref.size();
  std::size_t j = dec.size();
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == dec[j - 1] ? 0 : 1)) {
      out[i - 1] = j - 1;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      --i;  // reference symbol deleted
    } else {
      --j;  // decoded symbol inserted
    }
  }
  return out;
}

AccuracyReport phoneme_accuracy(std::span<const TranscriptRecord> records) {
  if (records.empty()) throw DataError("no transcript records");
  AccuracyReport report;
  auto slot = [](std::vector<std::string>& names, const std::string& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
    names.push_back(name);
    return names.size() - 1;
  };
  std::vector<std::string> labels;
  struct Hit {
    std::size_t row, condition;
    bool correct;
  };
  std::vector<Hit> hits;
  for (const auto& r : records) {
    validate(r);
    const auto condition = slot(report.conditions, r.condition.empty() ? std::string("all") : r.condition);
    const auto alignment = align(r.reference, r.decoded);
    for (const auto& t : r.targets) {
      const auto& at = alignment[t.index];
      const bool correct = at && r.decoded[*at] == t.symbol;
      hits.push_back({slot(labels, t.label()), condition, correct});
    }
  }
  for (const auto& label : labels) report.rows.push_back({label, std::vector<AccuracyCell>(report.conditions.size())});
  report.totals.assign(report.conditions.size(), {});
  for (const auto& h : hits) {
    auto& cell = report.rows[h.row].cells[h.condition];
    ++cell.targets;
    ++report.totals[h.condition].targets;
    if (h.correct) {
      ++cell.correct;
      ++report.totals[h.condition].correct;
    }
  }
  return report;
}

std::vector<JudgeRecord> load_judgments(std::istream& source) {
  const auto table = read_csv(source);
  const bool with_opponent = header_is(table.header, {"word", "participant", "first", "winner", "opponent"});
  if (!with_opponent && !header_is(table.header, {"word", "participant", "first", "winner"})) {
    throw DataError("judge header must be word,participant,first,winner[,opponent]", 1);
  }
  std::vector<JudgeRecord> out;
  for (const auto& row : table.rows) {
    if (row.cells.size() != table.header.size()) {
      throw DataError("expected " + std::to_string(table.header.size()) + " fields", row.line);
    }
    JudgeRecord r;
    r.word = row.cells[0];
    r.participant = row.cells[1];
    if (row.cells[2] == "cpa") {
      r.first = Side::cpa;
    } else if (row.cells[2] == "other") {
      r.first = Side::other;
    } else {
      throw DataError("first must be cpa or other, got \"" + row.cells[2] + "\"", row.line);
    }
    if (row.cells[3] == "first") {
      r.winner = Winner::first;
    } else if (row.cells[3] == "second") {
      r.winner = Winner::second;
    } else {
      throw DataError("winner must be first or second, got \"" + row.cells[3] + "\"", row.line);
    }
    if (with_opponent) r.opponent = row.cells[4];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<JudgeRecord> load_judgments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open judge file: " + path);
  try {
    return load_judgments(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<WinRateGroup> win_rates(std::span<const JudgeRecord> records) {
  if (records.empty()) throw DataError("no judge records");
  std::vector<WinRateGroup> groups;
  std::vector<std::map<std::pair<std::string, std::string>, std::size_t>> index;
  for (const auto& r : records) {
    auto g = std::find_if(groups.begin(), groups.end(), [&](const WinRateGroup& x) { return x.opponent == r.opponent; });
    if (g == groups.end()) {
      groups.push_back({r.opponent, {}, 0.0, 0, 0, 0});
      index.emplace_back();
      g = groups.end() - 1;
    }
    auto& cells = index[static_cast<std::size_t>(g - groups.begin())];
    const auto key = std::make_pair(r.word, r.participant);
    auto it = cells.find(key);
    if (it == cells.end()) {
      it = cells.emplace(key, g->cells.size()).first;
      g->cells.push_back({r.opponent, r.word, r.participant, 0, 0, 0, true});
    }
    auto& cell = g->cells[it->second];
    ++cell.judgments;
    if (r.first == Side::cpa) ++cell.cpa_first;
    if (r.cpa_won()) ++cell.cpa_wins;
  }
  for (auto& g : groups) {
    double sum = 0.0;
    for (auto& c : g.cells) {
      c.balanced = 2 * c.cpa_first == c.judgments;
      if (!c.balanced) continue;
      ++g.balanced_cells;
      sum += c.percent();
      if (c.percent() > 50.0) ++g.cells_above_50;
      if (c.percent() < 50.0) ++g.cells_below_50;
    }
    g.overall = g.balanced_cells == 0 ? 0.0 : sum / static_cast<double>(g.balanced_cells);
  }
  return groups;
}

}  // namespace phonapprox::scoring
