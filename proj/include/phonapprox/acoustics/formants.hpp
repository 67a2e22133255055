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

// Formant estimation, trajectory tracking and reference-box membership.

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "phonapprox/acoustics/wav.hpp"

namespace phonapprox::acoustics {

struct AnalysisConfig {
  double window_ms = 25.0;
  double hop_ms = 10.0;
  double pre_emphasis = 0.97;
  int lpc_order = 12;
  double min_frequency = 90.0;
  double max_frequency = 4000.0;
  double max_bandwidth = 400.0;
  int median_length = 5;
  int k_frames = 2;  // consecutive in-box frames that make a track count
};

struct Formant {
  double frequency = 0.0;  // Hz
  double bandwidth = 0.0;  // Hz
};

// Pole pairs of 1/A(z) inside the configured band with narrow enough
// bandwidth, ascending by frequency.
std::vector<Formant> formants_from_lpc(std::span<const double> coeffs, int sample_rate,
                                       const AnalysisConfig& config = {});

struct AlignmentSegment {
  std::string phone;
  double start = 0.0;  // seconds
  double end = 0.0;
};

struct FormantFrame {
  double t = 0.0;  // frame centre, seconds from clip start
  double f1 = 0.0;
  double f2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

struct FormantTrack {
  std::vector<FormantFrame> frames;

  double mean_f1() const;
  double mean_f2() const;
};

// Hamming window of length n.
std::vector<double> hamming(std::size_t n);

// Frames the segment, applies pre-emphasis and the taper, fits LPC, keeps
// frames with at least two formants, then median-smooths F1 and F2.
// Raises DataError when the segment lies outside the clip or is shorter
// than one window.
FormantTrack track_formants(const AudioClip& clip, const AlignmentSegment& segment,
                            const AnalysisConfig& config = {});

struct FormantBox {
  std::string vowel;
  double f1_min = 0.0;
  double f1_max = 0.0;
  double f2_min = 0.0;
  double f2_max = 0.0;

  bool contains(double f1, double f2) const {
    return f1 >= f1_min && f1 <= f1_max && f2 >= f2_min && f2 <= f2_max;
  }
};

// At least k consecutive frames inside the box.
bool track_in_box(const FormantTrack& track, const FormantBox& box, int k_frames);

// 100 * (tracks in box) / (tracks). Raises ContractError on an empty list.
double in_box_rate(std::span<const FormantTrack> tracks, const FormantBox& box, int k_frames);

// "phone,start_s,end_s" with a header line. A leading "file" column is
// accepted too, for one combined alignment table covering many recordings.
struct AlignmentRow {
  std::string file;  // empty for single-recording tables
  AlignmentSegment segment;
};
std::vector<AlignmentRow> load_alignments(std::istream& source);
std::vector<AlignmentRow> load_alignments_file(const std::string& path);

// "vowel,f1_min,f1_max,f2_min,f2_max" with a header line.
std::vector<FormantBox> load_boxes(std::istream& source);
std::vector<FormantBox> load_boxes_file(const std::string& path);

}  // namespace phonapprox::acoustics
