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

// Phoneme accuracy over aligned transcripts and order-debiased win rates.

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "phonapprox/error.hpp"
#include "phonapprox/scoring.hpp"

using namespace phonapprox;
using namespace phonapprox::scoring;

namespace {

TranscriptRecord record(std::vector<std::string> ref, std::vector<std::string> dec, std::vector<std::size_t> idx,
                        std::string condition = {}) {
  TranscriptRecord r;
  r.utterance_id = "u";
  r.targets.reserve(idx.size());
  for (auto i : idx) r.targets.push_back({i, ref.at(i), false});
  r.reference = std::move(ref);
  r.decoded = std::move(dec);
  r.condition = std::move(condition);
  return r;
}

const AccuracyRow& row(const AccuracyReport& rep, const std::string& label) {
  const auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const auto& r) { return r.label == label; });
  REQUIRE(it != rep.rows.end());
  return *it;
}

std::vector<JudgeRecord> cell(const std::string& word, const std::string& who, int cpa_first_wins, int cpa_first_losses,
                              int cpa_second_wins, int cpa_second_losses) {
  std::vector<JudgeRecord> out;
  auto add = [&](int n, Side first, Winner winner) {
    for (int i = 0; i < n; ++i) out.push_back({word, who, first, winner, {}});
  };
  add(cpa_first_wins, Side::cpa, Winner::first);
  add(cpa_first_losses, Side::cpa, Winner::second);
  add(cpa_second_wins, Side::other, Winner::second);
  add(cpa_second_losses, Side::other, Winner::first);
  return out;
}

}  // namespace

TEST_CASE("identical transcripts score 100% for every target") {
  std::vector<TranscriptRecord> recs{record({"b", "o", "l"}, {"b", "o", "l"}, {0, 1, 2}),
                                     record({"dʒ", "æ", "k", "ɪ", "t"}, {"dʒ", "æ", "k", "ɪ", "t"}, {0, 1})};
  const auto rep = phoneme_accuracy(recs);
  REQUIRE(rep.conditions == std::vector<std::string>{"all"});
  for (const auto& r : rep.rows) CHECK(r.cells[0].percent() == 100.0);
  CHECK(rep.totals[0].percent() == 100.0);
  CHECK(rep.totals[0].targets == 5);
}

TEST_CASE("a substituted target scores zero") {
  std::vector<TranscriptRecord> recs{record({"b", "o", "l"}, {"p", "o", "l"}, {0})};
  const auto rep = phoneme_accuracy(recs);
  CHECK(row(rep, "b").cells[0].percent() == 0.0);
}

TEST_CASE("alignment places a deletion so the vowel target is judged by substitution") {
  const std::vector<std::string> ref{"dʒ", "æ", "k", "ɪ", "t"}, dec{"dʒ", "ɛ", "k", "t"};
  const auto a = align(ref, dec);
  REQUIRE(a.size() == 5);
  CHECK(a[0] == 0u);
  CHECK(a[1] == 1u);
  CHECK(a[2] == 2u);
  CHECK(!a[3].has_value());
  CHECK(a[4] == 3u);
  CHECK(edit_distance(ref, dec) == 2);
  std::vector<TranscriptRecord> recs{record(ref, dec, {0, 1})};
  const auto rep = phoneme_accuracy(recs);
  CHECK(row(rep, "dʒ").cells[0].percent() == 100.0);
  CHECK(row(rep, "æ").cells[0].percent() == 0.0);
  CHECK(rep.totals[0].percent() == 50.0);
}

TEST_CASE("alignment tie-break prefers substitutions and leftmost indels") {
  const std::vector<std::string> ref{"a", "b"}, dec{"b", "a"};
  const auto a = align(ref, dec);
  CHECK(a[0] == 0u);
  CHECK(a[1] == 1u);
  // One extra decoded symbol: the insertion goes to the left.
  const std::vector<std::string> r2{"a", "a"}, d2{"a", "a", "a"};
  const auto b = align(r2, d2);
  CHECK(b[0] == 1u);
  CHECK(b[1] == 2u);
  // Empty decoded: every reference symbol is deleted.
  const auto c = align(r2, std::vector<std::string>{});
  CHECK(std::none_of(c.begin(), c.end(), [](auto x) { return x.has_value(); }));
}

TEST_CASE("edit distance agrees with a recursive oracle") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> sym(0, 2), len(0, 6);
  std::function<int(const std::vector<std::string>&, std::size_t, const std::vector<std::string>&, std::size_t)> ed;
  ed = [&](const auto& a, std::size_t i, const auto& b, std::size_t j) -> int {
    if (i == a.size()) return static_cast<int>(b.size() - j);
    if (j == b.size()) return static_cast<int>(a.size() - i);
    return std::min({ed(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1), ed(a, i + 1, b, j) + 1, ed(a, i, b, j + 1) + 1});
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> a(len(rng)), b(len(rng));
    for (auto& s : a) s = std::string(1, static_cast<char>('a' + sym(rng)));
    for (auto& s : b) s = std::string(1, static_cast<char>('a' + sym(rng)));
    CHECK(edit_distance(a, b) == ed(a, 0, b, 0));
    // The alignment's own cost reproduces the distance.
    const auto al = align(a, b);
    int matched = 0, subs = 0;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!al[i]) continue;
      if (last) CHECK(*al[i] > *last);
      last = al[i];
      ++matched;
      subs += a[i] == b[*al[i]] ? 0 : 1;
    }
    const int cost = subs + static_cast<int>(a.size() - matched) + static_cast<int>(b.size() - matched);
    CHECK(cost == edit_distance(a, b));
  }
}

TEST_CASE("substitution-only transcripts match a positional oracle") {
  std::mt19937 rng(8);
  const std::vector<std::string> alphabet{"p", "t", "k", "b", "d", "ɡ", "m", "n", "s", "l", "a", "e", "i", "o", "u"};
  for (int trial = 0; trial < 200; ++trial) {
    auto ref = alphabet;
    std::shuffle(ref.begin(), ref.end(), rng);
    ref.resize(std::uniform_int_distribution<std::size_t>(1, 10)(rng));
    auto dec = ref;
    int fresh = 0;
    for (auto& s : dec)
      if (rng() % 3 == 0) s = "x" + std::to_string(fresh++);
    std::vector<std::size_t> idx(ref.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t positional = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) positional += ref[i] == dec[i] ? 1 : 0;
    std::vector<TranscriptRecord> recs{record(ref, dec, idx)};
    const auto rep = phoneme_accuracy(recs);
    CHECK(rep.totals[0].correct == positional);
  }
}

TEST_CASE("accuracy is permutation invariant and bounded") {
  std::mt19937 rng(13);
  std::vector<TranscriptRecord> recs;
  const std::vector<std::string> syms{"b", "d", "æ", "ɔ", "l"};
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> ref(3 + rng() % 4), dec(2 + rng() % 5);
    for (auto& s : ref) s = syms[rng() % syms.size()];
    for (auto& s : dec) s = syms[rng() % syms.size()];
    recs.push_back(record(ref, dec, {0, ref.size() - 1}, i % 2 ? "KOR" : "CPA"));
  }
  const auto base = phoneme_accuracy(recs);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(recs.begin(), recs.end(), rng);
    const auto rep = phoneme_accuracy(recs);
    for (const auto& r : base.rows) {
      const auto& other = row(rep, r.label);
      for (std::size_t c = 0; c < base.conditions.size(); ++c) {
        const auto oc = std::find(rep.conditions.begin(), rep.conditions.end(), base.conditions[c]) - rep.conditions.begin();
        CHECK(other.cells[oc].correct == r.cells[c].correct);
        CHECK(other.cells[oc].targets == r.cells[c].targets);
        CHECK(r.cells[c].percent() >= 0.0);
        CHECK(r.cells[c].percent() <= 100.0);
      }
    }
  }
}

TEST_CASE("invalid transcript records are rejected") {
  CHECK_THROWS_AS(phoneme_accuracy(std::vector<TranscriptRecord>{}), DataError);
  auto r = record({"b", "o"}, {"b", "o"}, {0});
  r.targets[0].symbol = "o";
  CHECK_THROWS_AS(validate(r), DataError);
  r.targets[0] = {5, "o", false};
  CHECK_THROWS_AS(validate(r), DataError);
  CHECK_THROWS_AS(validate(record({}, {"b"}, {})), DataError);
  CHECK_THROWS_AS(validate(record({"b"}, {}, {0})), DataError);
}

TEST_CASE("transcript CSV loads targets and conditions") {
  std::istringstream in(
      "utterance_id,reference,decoded,targets,condition\n"
      "u1,dʒ æ k ɪ t,dʒ ɛ k t,0:dʒ*;1:æ,CPA\n"
      "u2,b o l,p o l,0:b,KOR\n");
  const auto recs = load_transcripts(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].targets[0].word_initial);
  CHECK(recs[0].targets[0].label() == "dʒ*");
  CHECK(recs[0].decoded.size() == 4);
  const auto rep = phoneme_accuracy(recs);
  CHECK(rep.conditions == std::vector<std::string>{"CPA", "KOR"});
  CHECK(row(rep, "dʒ*").cells[0].correct == 1);
  CHECK(row(rep, "b").cells[1].targets == 1);
  CHECK(row(rep, "b").cells[0].targets == 0);

  std::istringstream mismatch("utterance_id,reference,decoded,targets\nu,b o,b o,1:b\n");
  CHECK_THROWS_AS(load_transcripts(mismatch), DataError);
  std::istringstream bad_header("id,ref\n");
  CHECK_THROWS_AS(load_transcripts(bad_header), DataError);
  std::istringstream bad_target("utterance_id,reference,decoded,targets\nu,b o,b o,x:b\n");
  CHECK_THROWS_AS(load_transcripts(bad_target), DataError);
}

TEST_CASE("win rate examples") {
  auto all = cell("dɔn", "p1", 9, 0, 9, 0);
  auto g = win_rates(all);
  REQUIRE(g.size() == 1);
  CHECK(g[0].cells[0].percent() == 100.0);
  CHECK(g[0].overall == 100.0);

  auto split = cell("dɔn", "p1", 5, 4, 4, 5);
  g = win_rates(split);
  CHECK(g[0].cells[0].cpa_wins == 9);
  CHECK(g[0].cells[0].judgments == 18);
  CHECK(g[0].overall == 50.0);

  // Always picking the first presentation is pure order bias.
  auto biased = cell("dɔn", "p1", 9, 0, 0, 9);
  g = win_rates(biased);
  CHECK(g[0].cells[0].balanced);
  CHECK(g[0].cells[0].percent() == 50.0);
  CHECK(g[0].cells_above_50 == 0);
  CHECK(g[0].cells_below_50 == 0);
}

TEST_CASE("unbalanced cells are flagged and left out of the mean") {
  auto recs = cell("dɔn", "p1", 9, 0, 9, 0);
  auto extra = cell("boʊl", "p1", 3, 0, 1, 0);
  recs.insert(recs.end(), extra.begin(), extra.end());
  const auto g = win_rates(recs);
  REQUIRE(g[0].cells.size() == 2);
  CHECK(g[0].cells[0].balanced);
  CHECK(!g[0].cells[1].balanced);
  CHECK(g[0].cells[1].cpa_first == 3);
  CHECK(g[0].balanced_cells == 1);
  CHECK(g[0].overall == 100.0);
  CHECK_THROWS_AS(win_rates(std::vector<JudgeRecord>{}), DataError);
}

TEST_CASE("relabeling presentation order and shuffling leave win rates unchanged") {
  std::mt19937 rng(99);
  std::vector<JudgeRecord> recs;
  for (const char* opp : {"KOR", "ENG"})
    for (const char* w : {"dɔn", "boʊl", "loʊn"})
      for (const char* p : {"p1", "p2", "p3"})
        for (int i = 0; i < 18; ++i)
          recs.push_back({w, p, i % 2 ? Side::cpa : Side::other, rng() % 2 ? Winner::first : Winner::second, opp});
  const auto base = win_rates(recs);
  auto flipped = recs;
  for (auto& r : flipped) {
    r.first = r.first == Side::cpa ? Side::other : Side::cpa;
    r.winner = r.winner == Winner::first ? Winner::second : Winner::first;
  }
  auto shuffled = recs;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (const auto& other : {win_rates(flipped), win_rates(shuffled)}) {
    REQUIRE(other.size() == base.size());
    for (std::size_t gi = 0; gi < base.size(); ++gi) {
      CHECK(other[gi].overall == doctest::Approx(base[gi].overall).epsilon(1e-12));
      for (const auto& c : base[gi].cells) {
        const auto it = std::find_if(other[gi].cells.begin(), other[gi].cells.end(),
                                     [&](const auto& o) { return o.word == c.word && o.participant == c.participant; });
        REQUIRE(it != other[gi].cells.end());
        CHECK(it->cpa_wins == c.cpa_wins);
      }
    }
  }
}

TEST_CASE("judgment CSV parsing") {
  std::istringstream in("word,participant,first,winner,opponent\ndɔn,p1,cpa,first,KOR\ndɔn,p1,other,first,KOR\n");
  const auto recs = load_judgments(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].cpa_won());
  CHECK(!recs[1].cpa_won());
  CHECK(recs[1].opponent == "KOR");
  std::istringstream bad("word,participant,first,winner\ndɔn,p1,left,first\n");
  CHECK_THROWS_AS(load_judgments(bad), DataError);
  std::istringstream bad_winner("word,participant,first,winner\ndɔn,p1,cpa,third\n");
  CHECK_THROWS_AS(load_judgments(bad_winner), DataError);
}
