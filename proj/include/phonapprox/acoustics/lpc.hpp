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

// Linear prediction by the autocorrelation method.
//
// Coefficients follow the prediction-error filter convention
//   A(z) = 1 + a1 z^-1 + ... + ap z^-p,
// so a frame is modeled as x[n] = -(a1 x[n-1] + ... + ap x[n-p]) + e[n].

#include <complex>
#include <span>
#include <vector>

namespace phonapprox::acoustics {

struct LpcResult {
  std::vector<double> coeffs;      // a1..ap
  std::vector<double> reflection;  // k1..kp
  double error = 0.0;              // final prediction error energy
};

// r[0..max_lag] of the frame, unnormalized.
std::vector<double> autocorrelation(std::span<const double> frame, std::size_t max_lag);

// Solves the order-p normal equations given r[0..p]. Raises NumericError
// when r[0] is zero or the recursion loses positive error energy.
LpcResult levinson_durbin(std::span<const double> r, std::size_t order);

// autocorrelation + levinson_durbin. The frame must be longer than order.
LpcResult lpc(std::span<const double> frame, std::size_t order);

// Roots of c[0] z^n + c[1] z^(n-1) + ... + c[n] (c[0] != 0), from the
// eigenvalues of the companion matrix, each polished by Newton steps.
// Raises NumericError if a root's relative residual stays above 1e-8.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> c);

}  // namespace phonapprox::acoustics
