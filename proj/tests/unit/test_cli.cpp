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

// End-to-end runs of the command-line tool against golden outputs.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phonapprox/acoustics/wav.hpp"
#include "phonapprox/cli.hpp"
#include "phonapprox/json_io.hpp"
#include "support/fixtures.hpp"
#include "support/synth.hpp"

namespace fs = std::filesystem;
using namespace phonapprox;
using phonapprox::testing::data_path;
using phonapprox::testing::test_path;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = {}) {
  std::ostringstream out, err;
  std::istringstream in(input);
  auto* saved = std::cin.rdbuf(in.rdbuf());
  const int code = cli::run(args, out, err);
  std::cin.rdbuf(saved);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("phonapprox_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Compares every file in `dir` with the golden directory, both ways.
void check_against_golden(const fs::path& dir, const fs::path& golden) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(golden)) {
    CAPTURE(e.path().filename().string());
    const auto produced = dir / e.path().filename();
    REQUIRE(fs::exists(produced));
    CHECK(slurp(produced) == slurp(e.path()));
    ++n;
  }
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == static_cast<std::ptrdiff_t>(n));
}

}  // namespace

TEST_CASE("approximate reproduces the golden results for the evaluation words") {
  TempDir tmp("approx");
  const auto r = run({"approximate", "--words", data_path("evaluation_words.tsv"), "--out-dir", tmp.path.string()});
  CHECK(r.code == cli::kExitOk);
  check_against_golden(tmp.path, test_path("golden/approximate"));
  CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator{}) == 18);
}

TEST_CASE("render reproduces the golden cues") {
  TempDir tmp("cues");
  std::vector<std::string> args{"render", "--out-dir", tmp.path.string()};
  for (const auto& e : fs::directory_iterator(test_path("golden/approximate"))) args.push_back(e.path().string());
  const auto r = run(args);
  CHECK(r.code == cli::kExitOk);
  check_against_golden(tmp.path, test_path("golden/cues"));
}

TEST_CASE("approximate and render compose through a pipe") {
  const auto a = run({"approximate", "dɔn"});
  REQUIRE(a.code == cli::kExitOk);
  const auto j = Json::parse(a.out);
  REQUIRE(j.is_array());
  CHECK(j[0]["segments"][0]["approximation"] == "/ɨ/ + /t/");
  CHECK(j[0]["segments"][1]["approximation"] == "/o/ + /ʌ/");
  const auto r = run({"render", "--format", "text"}, a.out);
  CHECK(r.code == cli::kExitOk);
  const auto golden = Json::parse(slurp(test_path("golden/cues/dawn.cue.json")));
  CHECK(r.out == "dɔn\t" + golden["text"].get<std::string>() + "\n");
}

TEST_CASE("approximate --segments yields the table of composites") {
  const std::vector<std::pair<std::string, std::string>> rows{
      {"ɔ", "/o/ + /ʌ/"},         {"æ", "/ɛ/ + /ɐ/"},   {"ə", "/ɨ/ + /ʌ/"},  {"b*", "/ɨ/ + /p/"},
      {"d*", "/ɨ/ + /t/"},        {"ɡ*", "/ɨ/ + /k/"},  {"dʒ*", "/ɨ/ + /tɕ/ + /y/"},
      {"l*", "/ɨl/ + /ɾ/"},       {"m*", "/ɨm/ + /mᵇ/"}, {"n*", "/ɨn/ + /nᵈ/"},
      {"ʃ", "/s/ + /y/"},         {"tʃ", "/tɕʰ/ + /y/"}, {"dʒ", "/dʑ/ + /y/"}};
  std::vector<std::string> args{"approximate", "--segments"};
  for (const auto& [seg, _] : rows) args.push_back(seg);
  const auto r = run(args);
  REQUIRE(r.code == cli::kExitOk);
  const auto j = Json::parse(r.out);
  REQUIRE(j.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].first);
    CHECK(j[i]["segments"][0]["approximation"].get<std::string>() == rows[i].second);
  }
}

TEST_CASE("exit codes separate usage errors from data errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"--no-such-flag", "approximate", "o"}).code == cli::kExitUsage);
  CHECK(run({"approximate", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"approximate", "--ranking", "median", "o"}).code == cli::kExitUsage);
  const auto bad = run({"approximate", "da€k"});
  CHECK(bad.code == cli::kExitDataError);
  CHECK(bad.err.find("€k") != std::string::npos);
  // A path that does not exist is a usage error; unreadable content is a data error.
  CHECK(run({"--inventory", "/nonexistent.inv", "approximate", "o"}).code == cli::kExitUsage);
  CHECK(run({"score-phonemes", "/nonexistent.csv"}).code == cli::kExitUsage);
  CHECK(run({"render"}, "not json").code == cli::kExitDataError);
  TempDir tmp("exit_codes");
  spit(tmp.path / "broken.inv", "[segments]\nnot-a-segment\n");
  CHECK(run({"--inventory", (tmp.path / "broken.inv").string(), "approximate", "o"}).code == cli::kExitDataError);
  spit(tmp.path / "t.csv", "utterance_id,reference,decoded,targets\nu,b o,b o,7:b\n");
  CHECK(run({"score-phonemes", (tmp.path / "t.csv").string()}).code == cli::kExitDataError);
}

TEST_CASE("help lists every analysis override") {
  const auto r = run({"--help"});
  CHECK(r.code == cli::kExitOk);
  const std::string text = r.out + r.err;
  for (const char* flag : {"--window-ms", "--hop-ms", "--pre-emphasis", "--lpc-order", "--k-frames",
                           "--residual-threshold", "--ranking", "--self-pairs", "--config"}) {
    CAPTURE(flag);
    CHECK(text.find(flag) != std::string::npos);
  }
}

TEST_CASE("config files override defaults and reject unknown keys") {
  TempDir tmp("config");
  spit(tmp.path / "ok.json", R"({"residual_threshold": 0})");
  const auto r = run({"--config", (tmp.path / "ok.json").string(), "approximate", "--segments", "tʃ"});
  REQUIRE(r.code == cli::kExitOk);
  // The best affricate composite leaves a residual of one.
  CHECK(Json::parse(r.out)[0]["segments"][0]["decision"] == "skip");
  spit(tmp.path / "bad.json", R"({"window": 20})");
  CHECK(run({"--config", (tmp.path / "bad.json").string(), "approximate", "o"}).code == cli::kExitUsage);
}

TEST_CASE("repeated runs produce identical bytes") {
  const std::vector<std::string> args{"approximate", "dʒækɪt", "ɡɔrɡənzoʊlə"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("formants command reports in-box tokens for a synthetic corpus") {
  TempDir tmp("formants");
  const fs::path wavs = tmp.path / "wav";
  fs::create_directories(wavs);
  struct Token {
    std::string file, vowel;
    double f1, f2;
  };
  const std::vector<Token> tokens{{"s1.wav", "æ", 750, 1800}, {"s2.wav", "ɔ", 620, 1000}, {"s3.wav", "ə", 300, 2300}};
  std::string align = "file,phone,start_s,end_s\n";
  for (const auto& t : tokens) {
    acoustics::AudioClip clip;
    clip.samples = testing::synth_vowel({{t.f1, 80}, {t.f2, 90}}, 0.3);
    acoustics::write_wav_file((wavs / t.file).string(), clip);
    align += t.file + "," + t.vowel + ",0.05,0.25\n";
  }
  spit(tmp.path / "align.csv", align);
  const auto summary = tmp.path / "summary.json";
  const auto r = run({"formants", "--wav-dir", wavs.string(), "--alignments", (tmp.path / "align.csv").string(),
                      "--summary", summary.string()});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream report(r.out);
  std::string line;
  std::getline(report, line);
  CHECK(line == "file,phone,start_s,end_s,in_box,mean_f1,mean_f2,frames");
  std::vector<std::string> flags;
  while (std::getline(report, line)) {
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 8);
    flags.push_back(cols[4]);
  }
  CHECK(flags == std::vector<std::string>{"1", "1", "0"});
  const auto s = Json::parse(slurp(summary));
  CHECK(s["tokens"] == 3);
  CHECK(s["in_box"] == 2);
  CHECK(s["rate"].get<double>() == doctest::Approx(66.667));

  const auto parallel = run({"formants", "--wav-dir", wavs.string(), "--alignments", (tmp.path / "align.csv").string(),
                             "--jobs", "0"});
  CHECK(parallel.out == r.out);

  TempDir empty("formants_empty");
  CHECK(run({"formants", "--wav-dir", empty.path.string(), "--alignments", (tmp.path / "align.csv").string()}).code ==
        cli::kExitUsage);
}

TEST_CASE("score-phonemes and winrate emit reports") {
  TempDir tmp("scores");
  spit(tmp.path / "t.csv",
       "utterance_id,reference,decoded,targets,condition\n"
       "u1,dʒ æ k ɪ t,dʒ ɛ k t,0:dʒ*;1:æ,CPA\n"
       "u2,d ɔ n,d ɔ n,0:d*;1:ɔ,CPA\n");
  const auto s = run({"score-phonemes", (tmp.path / "t.csv").string()});
  REQUIRE(s.code == cli::kExitOk);
  const auto js = Json::parse(s.out);
  CHECK(js["conditions"] == Json::array({"CPA"}));
  CHECK(js["total"]["CPA"]["accuracy"].get<double>() == doctest::Approx(75.0));
  CHECK(js["rows"][1]["target"] == "æ");
  CHECK(js["rows"][1]["approximation"] == "/ɛ/ + /ɐ/");
  CHECK(js["rows"][1]["accuracy"]["CPA"]["correct"] == 0);

  std::string judge = "word,participant,first,winner\n";
  for (int i = 0; i < 18; ++i) judge += std::string("dɔn,p1,") + (i % 2 ? "cpa" : "other") + ",first\n";
  judge += "boʊl,p1,cpa,first\n";
  spit(tmp.path / "j.csv", judge);
  const auto w = run({"winrate", (tmp.path / "j.csv").string()});
  REQUIRE(w.code == cli::kExitOk);
  const auto jw = Json::parse(w.out);
  CHECK(jw["groups"][0]["mean_win_rate"].get<double>() == 50.0);
  CHECK(jw["groups"][0]["flagged"].size() == 1);
  CHECK(w.err.find("boʊl") != std::string::npos);
}
