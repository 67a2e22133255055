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

#include <immintrin.h>

#include "phonapprox/kernels.hpp"

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

namespace phonapprox::kernels::detail {
namespace {

int mismatch_count_avx2(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  const __m256i minus_one = _mm256_set1_epi8(-1);
  int count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // a * sign(b) is -1 exactly where both are specified and opposite.
    const __m256i prod = _mm256_sign_epi8(va, vb);
    const auto mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(prod, minus_one)));
    count += __builtin_popcount(mask);
  }
  for (; i < n; ++i) {
    if (a[i] != 0 && b[i] != 0 && a[i] != b[i]) ++count;
  }
  return count;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

// No FMA here: the result must match the scalar kernel bit for bit.
void emphasize_window_avx2(const double* in, double* out, std::size_t n, double coef,
                           const double* window) {
  if (n == 0) return;
  out[0] = in[0] * window[0];
  const __m256d c = _mm256_set1_pd(coef);
  std::size_t i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d cur = _mm256_loadu_pd(in + i);
    const __m256d prev = _mm256_loadu_pd(in + i - 1);
    const __m256d diff = _mm256_sub_pd(cur, _mm256_mul_pd(c, prev));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(diff, _mm256_loadu_pd(window + i)));
  }
  for (; i < n; ++i) {
    const double prod = coef * in[i - 1];
    out[i] = (in[i] - prod) * window[i];
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2, mismatch_count_avx2, dot_avx2, emphasize_window_avx2};
  return table;
}

}  // namespace phonapprox::kernels::detail
