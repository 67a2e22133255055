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

#include "phonapprox/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "phonapprox/acoustics/formants.hpp"
#include "phonapprox/acoustics/wav.hpp"
#include "phonapprox/composer.hpp"
#include "phonapprox/error.hpp"
#include "phonapprox/grapheme.hpp"
#include "phonapprox/ipa.hpp"
#include "phonapprox/json_io.hpp"
#include "phonapprox/scoring.hpp"
#include "text_util.hpp"

#ifndef PHONAPPROX_DATA_DIR
#define PHONAPPROX_DATA_DIR "data"
#endif

namespace phonapprox::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad invocations that survive argument parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string data_dir() {
  if (const char* env = std::getenv("PHONAPPROX_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return PHONAPPROX_DATA_DIR;
}

struct RunConfig {
  std::string table = data_dir() + "/features.csv";
  std::string inventory = data_dir() + "/korean.inv";
  std::string jamo = data_dir() + "/korean_jamo.csv";
  std::string boxes = data_dir() + "/formant_boxes.csv";
  acoustics::AnalysisConfig analysis;
  ComposerConfig composer;
};

// Values as typed on the command line, merged over the config file.
struct Flags {
  std::string config;
  std::string table, inventory, jamo, boxes;
  double window_ms = 0, hop_ms = 0, pre_emphasis = 0;
  int lpc_order = 0, k_frames = 0, residual_threshold = 0;
  std::string ranking;
  bool self_pairs = false;
};

struct Options {
  CLI::Option* table;
  CLI::Option* inventory;
  CLI::Option* jamo;
  CLI::Option* boxes;
  CLI::Option* window_ms;
  CLI::Option* hop_ms;
  CLI::Option* pre_emphasis;
  CLI::Option* lpc_order;
  CLI::Option* k_frames;
  CLI::Option* residual_threshold;
  CLI::Option* ranking;
  CLI::Option* self_pairs;
};

RankingMode ranking_or_throw(const std::string& text) {
  const auto mode = parse_ranking(text);
  if (!mode) throw UsageError("unknown ranking mode \"" + text + "\" (sum, max, lexicographic)");
  return *mode;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw DataError(path + ": config must be a JSON object");
  const fs::path base = fs::path(path).parent_path();
  auto file = [&](const Json& v) {
    const fs::path p = v.get<std::string>();
    return (p.is_absolute() ? p : base / p).string();
  };
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "table") cfg.table = file(value);
      else if (key == "inventory") cfg.inventory = file(value);
      else if (key == "jamo") cfg.jamo = file(value);
      else if (key == "boxes") cfg.boxes = file(value);
      else if (key == "window_ms") cfg.analysis.window_ms = value.get<double>();
      else if (key == "hop_ms") cfg.analysis.hop_ms = value.get<double>();
      else if (key == "pre_emphasis") cfg.analysis.pre_emphasis = value.get<double>();
      else if (key == "lpc_order") cfg.analysis.lpc_order = value.get<int>();
      else if (key == "k_frames") cfg.analysis.k_frames = value.get<int>();
      else if (key == "residual_threshold") cfg.composer.residual_threshold = value.get<int>();
      else if (key == "ranking") cfg.composer.ranking = ranking_or_throw(value.get<std::string>());
      else if (key == "self_pairs") cfg.composer.allow_self_pairs = value.get<bool>();
      else throw UsageError(path + ": unknown config key \"" + key + "\"");
    } catch (const nlohmann::json::exception&) {
      throw DataError(path + ": config key \"" + key + "\" has the wrong type");
    }
  }
}

RunConfig resolve_config(const Flags& f, const Options& o, const std::string& config_path) {
  RunConfig cfg;
  if (!config_path.empty()) apply_config_file(config_path, cfg);
  if (o.table->count()) cfg.table = f.table;
  if (o.inventory->count()) cfg.inventory = f.inventory;
  if (o.jamo->count()) cfg.jamo = f.jamo;
  if (o.boxes->count()) cfg.boxes = f.boxes;
  if (o.window_ms->count()) cfg.analysis.window_ms = f.window_ms;
  if (o.hop_ms->count()) cfg.analysis.hop_ms = f.hop_ms;
  if (o.pre_emphasis->count()) cfg.analysis.pre_emphasis = f.pre_emphasis;
  if (o.lpc_order->count()) cfg.analysis.lpc_order = f.lpc_order;
  if (o.k_frames->count()) cfg.analysis.k_frames = f.k_frames;
  if (o.residual_threshold->count()) cfg.composer.residual_threshold = f.residual_threshold;
  if (o.ranking->count()) cfg.composer.ranking = ranking_or_throw(f.ranking);
  if (o.self_pairs->count()) cfg.composer.allow_self_pairs = f.self_pairs;
  if (cfg.analysis.window_ms <= 0 || cfg.analysis.hop_ms <= 0) throw UsageError("window and hop must be positive");
  if (cfg.analysis.lpc_order < 1) throw UsageError("LPC order must be at least 1");
  if (cfg.analysis.k_frames < 1) throw UsageError("k-frames must be at least 1");
  if (cfg.composer.residual_threshold < 0) throw UsageError("residual threshold must be non-negative");
  return cfg;
}

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", round3(v));
  return buf;
}

std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

// Label -> file name: '*' marks word-initial, path separators are replaced.
std::string file_stem(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (c == '*') {
      out += "_initial";
    } else if (c == '/' || c == '\\' || c == ' ' || c == '\t') {
      out += '_';
    } else {
      out += c;
    }
  }
  return out.empty() ? "_" : out;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

// Writes to the stream for "-" or empty, to a file otherwise.
void emit(const std::string& target, const std::string& text, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << text;
  } else {
    write_text_file(target, text);
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- approximate

struct ApproximateArgs {
  std::vector<std::string> words;
  std::string words_file;
  bool segments = false;
  std::string out_dir;
  std::string format = "json";
};

struct WordItem {
  std::string label;
  std::string ipa;
};

std::vector<WordItem> read_word_items(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open word list: " + path);
  std::vector<WordItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (line_no == 1) text = detail::strip_bom(text);
    text = detail::trim(text);
    if (text.empty() || text.front() == '#') continue;
    auto fields = detail::split(text, '\t');
    if (fields.size() == 1) fields = detail::split(text, ',');
    if (fields.size() == 1) {
      items.push_back({std::string(text), std::string(text)});
    } else if (fields.size() == 2) {
      items.push_back({std::string(detail::trim(fields[0])), std::string(detail::trim(fields[1]))});
    } else {
      throw DataError(path + ": expected \"ipa\" or \"label<TAB>ipa\"", line_no);
    }
  }
  return items;
}

int cmd_approximate(const ApproximateArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<WordItem> items;
  for (const auto& w : a.words) items.push_back({w, w});
  if (!a.words_file.empty()) {
    const auto more = read_word_items(a.words_file);
    items.insert(items.end(), more.begin(), more.end());
  }
  if (items.empty()) throw UsageError("approximate: give IPA words or --words FILE");
  if (a.format != "json" && a.format != "text") throw UsageError("--format must be json or text");

  require_file(cfg.table, "feature table");
  require_file(cfg.inventory, "inventory");
  const auto table = load_feature_table_file(cfg.table);
  const auto inventory = load_inventory_file(cfg.inventory, table);

  bool failed = false;
  std::vector<WordResult> results;
  for (const auto& item : items) {
    try {
      WordResult w;
      w.word = item.label;
      std::string text = item.ipa;
      bool initial = true;
      if (a.segments) {
        initial = !text.empty() && text.back() == '*';
        if (initial) text.pop_back();
      }
      w.ipa = nfc(detail::trim(text));
      const auto segs = parse_ipa(w.ipa, table);
      if (segs.empty()) throw DataError("no IPA segments");
      if (a.segments && segs.size() != 1) throw DataError("--segments expects one segment per item");
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto position = i == 0 && initial ? Position::word_initial : Position::other;
        w.segments.push_back(gate(ApproxTarget{segs[i].ipa, position}, inventory, table, cfg.composer));
      }
      results.push_back(std::move(w));
    } catch (const DataError& e) {
      err << "approximate: " << item.label << ": " << e.what() << "\n";
      failed = true;
    }
  }

  if (a.format == "text") {
    std::ostringstream ss;
    for (const auto& w : results) {
      ss << w.word << "\t/" << w.ipa << "/\n";
      for (const auto& r : w.segments) {
        ss << "  /" << r.target.ipa << "/" << (r.target.position == Position::word_initial ? "*" : "") << "\t"
           << decision_name(r.decision) << "\t" << r.approximation() << "\n";
      }
    }
    emit("", ss.str(), out);
  } else if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    for (const auto& w : results) {
      write_text_file(fs::path(a.out_dir) / (file_stem(w.word) + ".json"), dump(to_json(w)));
    }
  } else {
    Json arr = Json::array();
    for (const auto& w : results) arr.push_back(to_json(w));
    out << dump(arr);
  }
  return failed ? kExitDataError : kExitOk;
}

// --------------------------------------------------------------------- render

struct RenderArgs {
  std::vector<std::string> inputs{"-"};
  std::string out_dir;
  std::string format = "json";
};

int cmd_render(const RenderArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.format != "json" && a.format != "text") throw UsageError("--format must be json or text");
  require_file(cfg.table, "feature table");
  require_file(cfg.jamo, "jamo map");
  const auto table = load_feature_table_file(cfg.table);
  const auto jamo = JamoMap::load_file(cfg.jamo);

  bool failed = false;
  std::vector<std::pair<WordResult, GraphemeCue>> rendered;
  for (const auto& input : a.inputs) {
    const auto text = read_input(input);
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      err << "render: " << input << ": invalid JSON: " << e.what() << "\n";
      failed = true;
      continue;
    }
    std::vector<Json> words;
    if (doc.is_array()) {
      for (const auto& w : doc) words.push_back(w);
    } else {
      words.push_back(doc);
    }
    for (const auto& wj : words) {
      try {
        auto w = word_result_from_json(wj, table);
        auto cue = render_cue(w.segments, jamo);
        rendered.emplace_back(std::move(w), std::move(cue));
      } catch (const DataError& e) {
        err << "render: " << input << ": " << e.what() << "\n";
        failed = true;
      }
    }
  }

  auto cue_doc = [](const WordResult& w, const GraphemeCue& cue) {
    Json j;
    j["word"] = w.word;
    j["ipa"] = w.ipa;
    const Json body = to_json(cue);
    j["blocks"] = body["blocks"];
    j["text"] = body["text"];
    return j;
  };
  if (a.format == "text") {
    for (const auto& [w, cue] : rendered) out << w.word << "\t" << cue.text_fallback() << "\n";
  } else if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    for (const auto& [w, cue] : rendered) {
      write_text_file(fs::path(a.out_dir) / (file_stem(w.word) + ".cue.json"), dump(cue_doc(w, cue)));
    }
  } else {
    Json arr = Json::array();
    for (const auto& [w, cue] : rendered) arr.push_back(cue_doc(w, cue));
    out << dump(arr);
  }
  return failed ? kExitDataError : kExitOk;
}

// ------------------------------------------------------------------- formants

struct FormantsArgs {
  std::string wav_dir;
  std::string alignments;
  std::string report = "-";
  std::string summary;
  unsigned jobs = 1;
};

struct TokenResult {
  std::string file;
  acoustics::AlignmentSegment segment;
  bool analyzed = false;
  bool in_box = false;
  std::size_t frames = 0;
  double mean_f1 = 0.0;
  double mean_f2 = 0.0;
  std::string skip_reason;
};

struct FileResult {
  std::vector<TokenResult> tokens;
  std::string error;
};

FileResult analyze_file(const fs::path& wav, const std::vector<acoustics::AlignmentSegment>& segments,
                        const std::vector<acoustics::FormantBox>& boxes, const acoustics::AnalysisConfig& cfg) {
  FileResult result;
  try {
    const auto clip = acoustics::read_wav_file(wav.string());
    for (const auto& seg : segments) {
      const auto box = std::find_if(boxes.begin(), boxes.end(),
                                    [&](const acoustics::FormantBox& b) { return b.vowel == seg.phone; });
      if (box == boxes.end()) continue;
      TokenResult t;
      t.file = wav.filename().string();
      t.segment = seg;
      try {
        const auto track = acoustics::track_formants(clip, seg, cfg);
        t.analyzed = true;
        t.frames = track.frames.size();
        t.in_box = acoustics::track_in_box(track, *box, cfg.k_frames);
        t.mean_f1 = track.mean_f1();
        t.mean_f2 = track.mean_f2();
      } catch (const DataError& e) {
        t.skip_reason = e.what();
      }
      result.tokens.push_back(std::move(t));
    }
  } catch (const DataError& e) {
    result.error = e.what();
  }
  return result;
}

int cmd_formants(const FormantsArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(a.wav_dir)) throw UsageError("--wav-dir is not a directory: " + a.wav_dir);
  std::vector<fs::path> wavs;
  for (const auto& entry : fs::directory_iterator(a.wav_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") wavs.push_back(entry.path());
  }
  std::sort(wavs.begin(), wavs.end());
  if (wavs.empty()) throw UsageError("no .wav files in " + a.wav_dir);
  require_file(cfg.boxes, "formant box file");
  const auto boxes = acoustics::load_boxes_file(cfg.boxes);

  // Alignments: a directory of <stem>.csv files, or one table whose rows
  // name their recording (a plain table is allowed for a single recording).
  std::vector<std::vector<acoustics::AlignmentSegment>> per_file(wavs.size());
  if (fs::is_directory(a.alignments)) {
    for (std::size_t i = 0; i < wavs.size(); ++i) {
      const auto path = fs::path(a.alignments) / (wavs[i].stem().string() + ".csv");
      if (!fs::is_regular_file(path)) throw UsageError("no alignment file for " + wavs[i].filename().string());
      for (auto& row : acoustics::load_alignments_file(path.string())) per_file[i].push_back(row.segment);
    }
  } else {
    require_file(a.alignments, "alignment file");
    const auto rows = acoustics::load_alignments_file(a.alignments);
    for (const auto& row : rows) {
      if (row.file.empty()) {
        if (wavs.size() != 1) throw UsageError("alignment table needs a file column for several recordings");
        per_file[0].push_back(row.segment);
        continue;
      }
      const auto it = std::find_if(wavs.begin(), wavs.end(), [&](const fs::path& p) {
        return p.filename().string() == row.file || p.stem().string() == row.file;
      });
      if (it == wavs.end()) throw DataError("alignment names unknown recording \"" + row.file + "\"");
      per_file[static_cast<std::size_t>(it - wavs.begin())].push_back(row.segment);
    }
  }

  std::vector<FileResult> results(wavs.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs == 0 ? std::thread::hardware_concurrency() : a.jobs,
                                                        static_cast<unsigned>(wavs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < wavs.size(); i = next++) {
      results[i] = analyze_file(wavs[i], per_file[i], boxes, cfg.analysis);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool failed = false;
  std::ostringstream report;
  report << "file,phone,start_s,end_s,in_box,mean_f1,mean_f2,frames\n";
  struct VowelTally {
    std::string vowel;
    std::size_t tokens = 0;
    std::size_t in_box = 0;
  };
  std::vector<VowelTally> tallies;
  for (const auto& b : boxes) tallies.push_back({b.vowel});
  Json skipped = Json::array();
  std::size_t tokens = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < wavs.size(); ++i) {
    if (!results[i].error.empty()) {
      err << "formants: " << results[i].error << "\n";
      failed = true;
      continue;
    }
    for (const auto& t : results[i].tokens) {
      if (!t.analyzed) {
        err << "formants: " << t.file << ": skipped /" << t.segment.phone << "/ at " << fmt3(t.segment.start)
            << " s: " << t.skip_reason << "\n";
        skipped.push_back(Json{{"file", t.file},
                               {"phone", t.segment.phone},
                               {"start_s", round3(t.segment.start)},
                               {"reason", t.skip_reason}});
        continue;
      }
      report << t.file << "," << t.segment.phone << "," << fmt3(t.segment.start) << "," << fmt3(t.segment.end)
             << "," << (t.in_box ? 1 : 0) << "," << fmt3(t.mean_f1) << "," << fmt3(t.mean_f2) << "," << t.frames
             << "\n";
      ++tokens;
      if (t.in_box) ++hits;
      for (auto& v : tallies) {
        if (v.vowel == t.segment.phone) {
          ++v.tokens;
          if (t.in_box) ++v.in_box;
        }
      }
    }
  }
  emit(a.report, report.str(), out);

  if (!a.summary.empty()) {
    auto rate = [](std::size_t hit, std::size_t total) {
      return total == 0 ? Json(nullptr) : Json(round3(100.0 * static_cast<double>(hit) / static_cast<double>(total)));
    };
    Json s;
    s["tokens"] = tokens;
    s["in_box"] = hits;
    s["rate"] = rate(hits, tokens);
    Json vowels = Json::array();
    for (const auto& v : tallies) {
      vowels.push_back(Json{{"vowel", v.vowel}, {"tokens", v.tokens}, {"in_box", v.in_box}, {"rate", rate(v.in_box, v.tokens)}});
    }
    s["vowels"] = std::move(vowels);
    s["skipped"] = std::move(skipped);
    s["analysis"] = Json{{"window_ms", round3(cfg.analysis.window_ms)},
                         {"hop_ms", round3(cfg.analysis.hop_ms)},
                         {"pre_emphasis", round3(cfg.analysis.pre_emphasis)},
                         {"lpc_order", cfg.analysis.lpc_order},
                         {"k_frames", cfg.analysis.k_frames},
                         {"band_hz", Json::array({round3(cfg.analysis.min_frequency), round3(cfg.analysis.max_frequency)})},
                         {"max_bandwidth_hz", round3(cfg.analysis.max_bandwidth)},
                         {"median_length", cfg.analysis.median_length}};
    emit(a.summary, dump(s), out);
  }
  return failed ? kExitDataError : kExitOk;
}

// ------------------------------------------------------------- score-phonemes

struct ScoreArgs {
  std::string input;
  std::string out = "-";
  std::string format = "json";
};

int cmd_score_phonemes(const ScoreArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (a.format != "json" && a.format != "text") throw UsageError("--format must be json or text");
  require_file(a.input, "transcript file");
  const auto records = scoring::load_transcripts_file(a.input);
  const auto report = scoring::phoneme_accuracy(records);

  // The approximation column is filled from the configured inventory when
  // the target resolves in the feature table.
  std::vector<std::string> approximations(report.rows.size());
  if (fs::is_regular_file(cfg.table) && fs::is_regular_file(cfg.inventory)) {
    const auto table = load_feature_table_file(cfg.table);
    const auto inventory = load_inventory_file(cfg.inventory, table);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      std::string label = report.rows[i].label;
      const bool initial = !label.empty() && label.back() == '*';
      if (initial) label.pop_back();
      if (table.find(label) == nullptr) continue;
      approximations[i] =
          gate(ApproxTarget{label, initial ? Position::word_initial : Position::other}, inventory, table, cfg.composer)
              .approximation();
    }
  }

  auto cell_json = [](const scoring::AccuracyCell& c) {
    return Json{{"correct", c.correct}, {"targets", c.targets}, {"accuracy", round3(c.percent())}};
  };
  if (a.format == "text") {
    std::ostringstream ss;
    ss << "Target\tApproximation";
    for (const auto& c : report.conditions) ss << "\t" << c;
    ss << "\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      std::string symbol = report.rows[i].label;
      const bool initial = !symbol.empty() && symbol.back() == '*';
      if (initial) symbol.pop_back();
      ss << "/" << symbol << "/" << (initial ? "*" : "") << "\t" << (approximations[i].empty() ? "-" : approximations[i]);
      for (const auto& c : report.rows[i].cells) ss << "\t" << (c.targets ? fmt1(c.percent()) + "%" : "-");
      ss << "\n";
    }
    ss << "Total\t-";
    for (const auto& c : report.totals) ss << "\t" << fmt1(c.percent()) << "%";
    ss << "\n";
    emit(a.out, ss.str(), out);
    return kExitOk;
  }
  Json j;
  j["conditions"] = report.conditions;
  Json rows = Json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    Json row;
    row["target"] = report.rows[i].label;
    row["approximation"] = approximations[i];
    Json acc;
    for (std::size_t c = 0; c < report.conditions.size(); ++c) {
      acc[report.conditions[c]] = cell_json(report.rows[i].cells[c]);
    }
    row["accuracy"] = std::move(acc);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  Json total;
  for (std::size_t c = 0; c < report.conditions.size(); ++c) total[report.conditions[c]] = cell_json(report.totals[c]);
  j["total"] = std::move(total);
  emit(a.out, dump(j), out);
  return kExitOk;
}

// -------------------------------------------------------------------- winrate

int cmd_winrate(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "json" && a.format != "text") throw UsageError("--format must be json or text");
  require_file(a.input, "judge file");
  const auto records = scoring::load_judgments_file(a.input);
  const auto groups = scoring::win_rates(records);
  bool flagged = false;
  for (const auto& g : groups) {
    for (const auto& c : g.cells) {
      if (!c.balanced) {
        err << "winrate: unbalanced presentation order in cell (" << c.word << ", " << c.participant << ")"
            << (g.opponent.empty() ? "" : " vs " + g.opponent) << ": " << c.cpa_first << " of " << c.judgments
            << " judgments show CPA first; excluded from the mean\n";
        flagged = true;
      }
    }
  }
  if (a.format == "text") {
    std::ostringstream ss;
    for (const auto& g : groups) {
      ss << "CPA vs " << (g.opponent.empty() ? "other" : g.opponent) << "\n";
      std::vector<std::string> words;
      std::vector<std::string> people;
      for (const auto& c : g.cells) {
        if (std::find(words.begin(), words.end(), c.word) == words.end()) words.push_back(c.word);
        if (std::find(people.begin(), people.end(), c.participant) == people.end()) people.push_back(c.participant);
      }
      ss << "word";
      for (const auto& p : people) ss << "\t" << p;
      ss << "\n";
      for (const auto& w : words) {
        ss << w;
        for (const auto& p : people) {
          const auto it = std::find_if(g.cells.begin(), g.cells.end(),
                                       [&](const scoring::WinCell& c) { return c.word == w && c.participant == p; });
          ss << "\t" << (it == g.cells.end() ? "-" : fmt1(it->percent()) + (it->balanced ? "" : "!"));
        }
        ss << "\n";
      }
      ss << "mean " << fmt1(g.overall) << "%  above 50%: " << g.cells_above_50 << "/" << g.balanced_cells
         << "  below 50%: " << g.cells_below_50 << "/" << g.balanced_cells << "\n";
    }
    emit(a.out, ss.str(), out);
    return kExitOk;
  }
  Json j;
  Json arr = Json::array();
  for (const auto& g : groups) {
    Json gj;
    gj["opponent"] = g.opponent;
    gj["mean_win_rate"] = round3(g.overall);
    gj["balanced_cells"] = g.balanced_cells;
    gj["cells_above_50"] = g.cells_above_50;
    gj["cells_below_50"] = g.cells_below_50;
    Json cells = Json::array();
    Json bad = Json::array();
    for (const auto& c : g.cells) {
      Json cj{{"word", c.word},
              {"participant", c.participant},
              {"judgments", c.judgments},
              {"cpa_wins", c.cpa_wins},
              {"cpa_first", c.cpa_first},
              {"win_rate", round3(c.percent())},
              {"balanced", c.balanced}};
      if (!c.balanced) bad.push_back(Json{{"word", c.word}, {"participant", c.participant}});
      cells.push_back(std::move(cj));
    }
    gj["cells"] = std::move(cells);
    gj["flagged"] = std::move(bad);
    arr.push_back(std::move(gj));
  }
  j["groups"] = std::move(arr);
  emit(a.out, dump(j), out);
  (void)flagged;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compositional approximation of L2 phonemes with L1 segments, plus the evaluation tooling."};
  app.name("phonapprox");
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  Options o{};
  const RunConfig defaults;
  app.add_option("--config", f.config, "JSON file with any of the overrides below (flags win)")->check(CLI::ExistingFile);
  o.table = app.add_option("--table", f.table, "feature table CSV")->default_str(defaults.table);
  o.inventory = app.add_option("--inventory", f.inventory, "L1 inventory file")->default_str(defaults.inventory);
  o.jamo = app.add_option("--jamo", f.jamo, "IPA to jamo map CSV")->default_str(defaults.jamo);
  o.boxes = app.add_option("--boxes", f.boxes, "formant box CSV")->default_str(defaults.boxes);
  o.window_ms = app.add_option("--window-ms", f.window_ms, "analysis window (ms)")->default_str("25");
  o.hop_ms = app.add_option("--hop-ms", f.hop_ms, "analysis hop (ms)")->default_str("10");
  o.pre_emphasis = app.add_option("--pre-emphasis", f.pre_emphasis, "pre-emphasis coefficient")->default_str("0.97");
  o.lpc_order = app.add_option("--lpc-order", f.lpc_order, "LPC order")->default_str("12");
  o.k_frames = app.add_option("--k-frames", f.k_frames, "consecutive in-box frames for a hit")->default_str("2");
  o.residual_threshold =
      app.add_option("--residual-threshold", f.residual_threshold, "max consonant residual")->default_str("2");
  o.ranking = app.add_option("--ranking", f.ranking, "vowel ranking: sum, max or lexicographic")->default_str("sum");
  o.self_pairs = app.add_flag("--self-pairs", f.self_pairs, "allow a vowel to pair with itself");

  ApproximateArgs approx;
  auto* sub_approx = app.add_subcommand("approximate", "approximate IPA words with the L1 inventory");
  sub_approx->add_option("ipa", approx.words, "IPA words");
  sub_approx->add_option("--words", approx.words_file, "file of IPA words, optionally \"label<TAB>ipa\"")
      ->check(CLI::ExistingFile);
  sub_approx->add_flag("--segments", approx.segments, "each item is one target segment; a trailing * marks word-initial");
  sub_approx->add_option("--out-dir", approx.out_dir, "write one <label>.json per word");
  sub_approx->add_option("--format", approx.format, "json or text")->default_str("json");

  RenderArgs render;
  auto* sub_render = app.add_subcommand("render", "render approximate output as Hangul cues");
  sub_render->add_option("inputs", render.inputs, "approximate JSON files ('-' for stdin)")->default_str("-");
  sub_render->add_option("--out-dir", render.out_dir, "write one <label>.cue.json per word");
  sub_render->add_option("--format", render.format, "json or text")->default_str("json");

  FormantsArgs formants;
  auto* sub_formants = app.add_subcommand("formants", "track F1/F2 of aligned vowels and count in-box tokens");
  sub_formants->add_option("--wav-dir", formants.wav_dir, "directory of mono PCM16 .wav files")->required();
  sub_formants->add_option("--alignments", formants.alignments, "alignment CSV or directory of <stem>.csv")->required();
  sub_formants->add_option("--report", formants.report, "per-token CSV ('-' for stdout)")->default_str("-");
  sub_formants->add_option("--summary", formants.summary, "per-vowel JSON summary path");
  sub_formants->add_option("--jobs", formants.jobs, "parallel files (0 = all cores)")->default_str("1");

  ScoreArgs score;
  auto* sub_score = app.add_subcommand("score-phonemes", "phoneme accuracy of decoded transcripts");
  sub_score->add_option("transcripts", score.input, "transcript CSV")->required();
  sub_score->add_option("--out", score.out, "report path ('-' for stdout)")->default_str("-");
  sub_score->add_option("--format", score.format, "json or text")->default_str("json");

  ScoreArgs wins;
  auto* sub_wins = app.add_subcommand("winrate", "order-debiased CPA win rates from judge verdicts");
  sub_wins->add_option("judgments", wins.input, "judge CSV")->required();
  sub_wins->add_option("--out", wins.out, "report path ('-' for stdout)")->default_str("-");
  sub_wins->add_option("--format", wins.format, "json or text")->default_str("json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const auto cfg = resolve_config(f, o, f.config);
    if (sub_approx->parsed()) return cmd_approximate(approx, cfg, out, err);
    if (sub_render->parsed()) return cmd_render(render, cfg, out, err);
    if (sub_formants->parsed()) return cmd_formants(formants, cfg, out, err);
    if (sub_score->parsed()) return cmd_score_phonemes(score, cfg, out);
    if (sub_wins->parsed()) return cmd_winrate(wins, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace phonapprox::cli
