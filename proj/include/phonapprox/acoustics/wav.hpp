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

// Mono PCM16 RIFF/WAVE input and output.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace phonapprox::acoustics {

struct AudioClip {
  std::vector<double> samples;  // normalized to [-1, 1)
  int sample_rate = 16000;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Accepts format tag 1 (or WAVE_FORMAT_EXTENSIBLE wrapping PCM), 16 bits,
// one channel. Unknown chunks are skipped. Raises DataError otherwise.
AudioClip read_wav(std::istream& source);
AudioClip read_wav_file(const std::string& path);

// Samples are clipped to [-1, 1] and scaled by 32767.
void write_wav(std::ostream& out, const AudioClip& clip);
void write_wav_file(const std::string& path, const AudioClip& clip);

}  // namespace phonapprox::acoustics
