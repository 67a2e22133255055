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

#include "phonapprox/kernels.hpp"

namespace phonapprox::kernels {
namespace {

int mismatch_count_scalar(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0 && b[i] != 0 && a[i] != b[i]) ++count;
  }
  return count;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void emphasize_window_scalar(const double* in, double* out, std::size_t n, double coef,
                             const double* window) {
  if (n == 0) return;
  out[0] = in[0] * window[0];
  for (std::size_t i = 1; i < n; ++i) out[i] = (in[i] - coef * in[i - 1]) * window[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, mismatch_count_scalar, dot_scalar,
                                 emphasize_window_scalar};
  return table;
}

}  // namespace phonapprox::kernels
