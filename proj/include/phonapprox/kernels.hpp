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

// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2 variant; active() picks one at first use based on CPUID.
// Set PHONAPPROX_ISA=scalar in the environment to pin the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace phonapprox::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // Positions where both marks are non-zero and differ (marks in {-1,0,+1}).
  int (*mismatch_count)(const std::int8_t* a, const std::int8_t* b, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[0] = in[0]*w[0]; out[i] = (in[i] - coef*in[i-1]) * w[i].
  void (*emphasize_window)(const double* in, double* out, std::size_t n, double coef,
                           const double* window);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();

const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace phonapprox::kernels
