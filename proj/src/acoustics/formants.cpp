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

#include "phonapprox/acoustics/formants.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "phonapprox/acoustics/lpc.hpp"
#include "phonapprox/error.hpp"
#include "phonapprox/kernels.hpp"
#include "text_util.hpp"

namespace phonapprox::acoustics {

std::vector<Formant> formants_from_lpc(std::span<const double> coeffs, int sample_rate,
                                       const AnalysisConfig& config) {
  std::vector<double> poly;
  poly.reserve(coeffs.size() + 1);
  poly.push_back(1.0);
  poly.insert(poly.end(), coeffs.begin(), coeffs.end());
  const double fs = sample_rate;
  std::vector<Formant> out;
  for (const auto& z : polynomial_roots(poly)) {
    if (z.imag() <= 0.0) continue;
    const double radius = std::abs(z);
    if (radius <= 0.0) continue;
    const double frequency = std::atan2(z.imag(), z.real()) * fs / (2.0 * std::numbers::pi);
    const double bandwidth = -std::log(radius) * fs / std::numbers::pi;
    if (frequency < config.min_frequency || frequency > config.max_frequency) continue;
    if (!(bandwidth < config.max_bandwidth)) continue;
    out.push_back({frequency, bandwidth});
  }
  std::sort(out.begin(), out.end(),
            [](const Formant& a, const Formant& b) { return a.frequency < b.frequency; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Formant& a, const Formant& b) { return a.frequency == b.frequency; }),
            out.end());
  return out;
}

double FormantTrack::mean_f1() const {
  double sum = 0.0;
  for (const auto& f : frames) sum += f.f1;
  return frames.empty() ? 0.0 : sum / static_cast<double>(frames.size());
}

double FormantTrack::mean_f2() const {
  double sum = 0.0;
  for (const auto& f : frames) sum += f.f2;
  return frames.empty() ? 0.0 : sum / static_cast<double>(frames.size());
}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return w;
}

namespace {

// Centred running median; the window shrinks symmetrically at the edges.
std::vector<double> median_smooth(const std::vector<double>& x, int length) {
  if (length <= 1) return x;
  const auto half = static_cast<std::ptrdiff_t>(length / 2);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());
  std::vector<double> window;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto reach = std::min({half, i, n - 1 - i});
    window.assign(x.begin() + (i - reach), x.begin() + (i + reach + 1));
    std::nth_element(window.begin(), window.begin() + reach, window.end());
    out[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(reach)];
  }
  return out;
}

}  // namespace

FormantTrack track_formants(const AudioClip& clip, const AlignmentSegment& segment,
                            const AnalysisConfig& config) {
  if (!(segment.start >= 0.0) || !(segment.end > segment.start)) {
    throw DataError("alignment segment /" + segment.phone + "/ needs 0 <= start < end");
  }
  if (config.window_ms <= 0.0 || config.hop_ms <= 0.0 || config.lpc_order < 1) {
    throw ContractError("analysis window, hop and LPC order must be positive");
  }
  const double fs = clip.sample_rate;
  const auto first = static_cast<std::size_t>(std::llround(segment.start * fs));
  const auto last = static_cast<std::size_t>(std::llround(segment.end * fs));
  if (last > clip.samples.size()) {
    throw DataError("alignment segment /" + segment.phone + "/ ends past the recording");
  }
  const auto window = static_cast<std::size_t>(std::llround(config.window_ms * fs / 1000.0));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(config.hop_ms * fs / 1000.0)));
  if (last - first < window) {
    throw DataError("segment /" + segment.phone + "/ is shorter than one analysis window");
  }
  if (window <= static_cast<std::size_t>(config.lpc_order)) {
    throw ContractError("analysis window must be longer than the LPC order");
  }

  const auto taper = hamming(window);
  const auto& kernel = kernels::active();
  std::vector<double> frame(window);
  std::vector<FormantFrame> raw;
  for (std::size_t start = first; start + window <= last; start += hop) {
    kernel.emphasize_window(clip.samples.data() + start, frame.data(), window, config.pre_emphasis,
                            taper.data());
    std::vector<Formant> found;
    try {
      const auto fit = lpc(frame, static_cast<std::size_t>(config.lpc_order));
      found = formants_from_lpc(fit.coeffs, clip.sample_rate, config);
    } catch (const NumericError&) {
      continue;  // silent or degenerate frame: no formants
    }
    if (found.size() < 2) continue;
    const double t = (static_cast<double>(start) + static_cast<double>(window) / 2.0) / fs;
    raw.push_back({t, found[0].frequency, found[1].frequency, found[0].bandwidth, found[1].bandwidth});
  }

  std::vector<double> f1(raw.size());
  std::vector<double> f2(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    f1[i] = raw[i].f1;
    f2[i] = raw[i].f2;
  }
  f1 = median_smooth(f1, config.median_length);
  f2 = median_smooth(f2, config.median_length);
  FormantTrack track;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(f1[i] < f2[i])) continue;
    track.frames.push_back({raw[i].t, f1[i], f2[i], raw[i].b1, raw[i].b2});
  }
  return track;
}

bool track_in_box(const FormantTrack& track, const FormantBox& box, int k_frames) {
  const int need = std::max(1, k_frames);
  int run = 0;
  for (const auto& f : track.frames) {
    run = box.contains(f.f1, f.f2) ? run + 1 : 0;
    if (run >= need) return true;
  }
  return false;
}

double in_box_rate(std::span<const FormantTrack> tracks, const FormantBox& box, int k_frames) {
  if (tracks.empty()) throw ContractError("in_box_rate needs at least one track");
  std::size_t hits = 0;
  for (const auto& t : tracks) {
    if (track_in_box(t, box, k_frames)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(tracks.size());
}

namespace {

// Header-driven CSV: returns data rows split on commas, blank and '#' lines skipped.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> read_rows(
    std::istream& source, std::vector<std::string>& storage, std::vector<std::string>& header) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  while (std::getline(source, line)) {
    ++line_no;
    std::string_view text = line;
    if (line_no == 1) text = detail::strip_bom(text);
    text = detail::trim(text);
    if (text.empty() || text.front() == '#') continue;
    if (header.empty()) {
      for (auto cell : detail::split(text, ',')) header.emplace_back(detail::trim(cell));
      continue;
    }
    storage.emplace_back(text);
    rows.push_back({line_no, {}});
  }
  // Split after all lines are stored so the views stay valid.
  std::size_t next = 0;
  for (auto& row : rows) row.second = detail::split(storage[next++], ',');
  return rows;
}

double number(std::string_view cell, std::size_t line) {
  const auto v = detail::parse_double(cell);
  if (!v || !std::isfinite(*v)) throw DataError("not a number: \"" + std::string(detail::trim(cell)) + "\"", line);
  return *v;
}

}  // namespace

std::vector<AlignmentRow> load_alignments(std::istream& source) {
  std::vector<std::string> storage;
  std::vector<std::string> header;
  const auto rows = read_rows(source, storage, header);
  const std::vector<std::string> plain{"phone", "start_s", "end_s"};
  const std::vector<std::string> combined{"file", "phone", "start_s", "end_s"};
  const bool with_file = header == combined;
  if (!with_file && header != plain) {
    throw DataError("alignment header must be phone,start_s,end_s or file,phone,start_s,end_s", 1);
  }
  std::vector<AlignmentRow> out;
  for (const auto& [line, cells] : rows) {
    if (cells.size() != header.size()) throw DataError("expected " + std::to_string(header.size()) + " fields", line);
    const std::size_t o = with_file ? 1 : 0;
    AlignmentRow row;
    if (with_file) row.file = std::string(detail::trim(cells[0]));
    row.segment.phone = std::string(detail::trim(cells[o]));
    row.segment.start = number(cells[o + 1], line);
    row.segment.end = number(cells[o + 2], line);
    if (row.segment.phone.empty()) throw DataError("empty phone label", line);
    if (!(row.segment.start >= 0.0 && row.segment.start < row.segment.end)) {
      throw DataError("need 0 <= start < end", line);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<AlignmentRow> load_alignments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open alignment file: " + path);
  try {
    return load_alignments(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<FormantBox> load_boxes(std::istream& source) {
  std::vector<std::string> storage;
  std::vector<std::string> header;
  const auto rows = read_rows(source, storage, header);
  if (header != std::vector<std::string>{"vowel", "f1_min", "f1_max", "f2_min", "f2_max"}) {
    throw DataError("box header must be vowel,f1_min,f1_max,f2_min,f2_max", 1);
  }
  std::vector<FormantBox> out;
  for (const auto& [line, cells] : rows) {
    if (cells.size() != 5) throw DataError("expected 5 fields", line);
    FormantBox box{std::string(detail::trim(cells[0])), number(cells[1], line), number(cells[2], line),
                   number(cells[3], line), number(cells[4], line)};
    if (!(box.f1_min < box.f1_max && box.f2_min < box.f2_max)) {
      throw DataError("box for /" + box.vowel + "/ needs min < max on both axes", line);
    }
    for (const auto& b : out) {
      if (b.vowel == box.vowel) throw DataError("duplicate box for /" + box.vowel + "/", line);
    }
    out.push_back(std::move(box));
  }
  return out;
}

std::vector<FormantBox> load_boxes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open box file: " + path);
  try {
    return load_boxes(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace phonapprox::acoustics
