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

#include "phonapprox/acoustics/lpc.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "phonapprox/error.hpp"
#include "phonapprox/kernels.hpp"

namespace phonapprox::acoustics {

std::vector<double> autocorrelation(std::span<const double> frame, std::size_t max_lag) {
  const auto& k = kernels::active();
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag && lag < frame.size(); ++lag) {
    r[lag] = k.dot(frame.data(), frame.data() + lag, frame.size() - lag);
  }
  return r;
}

LpcResult levinson_durbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) throw ContractError("levinson_durbin needs r[0..order]");
  if (!(r[0] > 0.0) || !std::isfinite(r[0])) throw NumericError("singular recursion: zero-energy frame");
  LpcResult out;
  out.error = r[0];
  std::vector<double> a(order + 1, 0.0);
  std::vector<double> prev(order + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / out.error;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    out.error *= 1.0 - k * k;
    out.reflection.push_back(k);
    if (!(out.error > 0.0) || !std::isfinite(out.error)) {
      throw NumericError("singular recursion at order " + std::to_string(i));
    }
  }
  out.coeffs.assign(a.begin() + 1, a.end());
  return out;
}

LpcResult lpc(std::span<const double> frame, std::size_t order) {
  if (frame.size() <= order) {
    throw ContractError("LPC frame of " + std::to_string(frame.size()) + " samples is too short for order " +
                        std::to_string(order));
  }
  const auto r = autocorrelation(frame, order);
  return levinson_durbin(r, order);
}

namespace {

// Horner evaluation of the polynomial and its derivative.
std::pair<std::complex<double>, std::complex<double>> evaluate(std::span<const double> c,
                                                               std::complex<double> z) {
  std::complex<double> p = c[0];
  std::complex<double> dp = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

double relative_residual(std::span<const double> c, std::complex<double> z) {
  double scale = 0.0;
  const double m = std::abs(z);
  for (std::size_t i = 0; i < c.size(); ++i) {
    scale += std::abs(c[i]) * std::pow(m, static_cast<double>(c.size() - 1 - i));
  }
  return scale > 0.0 ? std::abs(evaluate(c, z).first) / scale : 0.0;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> c) {
  if (c.empty() || c[0] == 0.0) throw ContractError("polynomial_roots needs a nonzero leading coefficient");
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) companion(0, static_cast<Eigen::Index>(j)) = -c[j + 1] / c[0];
  for (std::size_t i = 1; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalue solver did not converge");
  std::vector<std::complex<double>> roots;
  roots.reserve(n);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> z = solver.eigenvalues()[i];
    for (int step = 0; step < 8; ++step) {
      const auto [p, dp] = evaluate(c, z);
      if (std::abs(dp) == 0.0) break;
      const auto next = z - p / dp;
      if (relative_residual(c, next) > relative_residual(c, z)) break;
      z = next;
    }
    // Real coefficients: a root with negligible imaginary part is real.
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z))) z = {z.real(), 0.0};
    if (relative_residual(c, z) > 1e-8) throw NumericError("root finding did not converge");
    roots.push_back(z);
  }
  return roots;
}

}  // namespace phonapprox::acoustics
