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

// Scalar and AVX2 kernels must agree on every input shape.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "phonapprox/kernels.hpp"

using namespace phonapprox::kernels;

namespace {

int reference_mismatch(const std::vector<std::int8_t>& a, const std::vector<std::int8_t>& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] != 0 && b[i] != 0 && a[i] != b[i]) ? 1 : 0;
  return n;
}

std::vector<const KernelTable*> all_tables() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* avx = avx2_kernels()) out.push_back(avx);
  return out;
}

}  // namespace

TEST_CASE("active table is one of the compiled variants") {
  const auto& k = active();
  CHECK((k.isa == Isa::scalar || k.isa == Isa::avx2));
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
  MESSAGE("active kernels: " << isa_name(k.isa));
}

TEST_CASE("mismatch_count matches the element-wise definition for all lengths") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> mark(-1, 1);
  for (std::size_t n = 0; n <= 80; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::int8_t> a(n), b(n);
      for (auto& x : a) x = static_cast<std::int8_t>(mark(rng));
      for (auto& x : b) x = static_cast<std::int8_t>(mark(rng));
      const int want = reference_mismatch(a, b);
      for (const auto* t : all_tables()) {
        CAPTURE(isa_name(t->isa));
        CHECK(t->mismatch_count(a.data(), b.data(), n) == want);
      }
    }
  }
}

TEST_CASE("dot agrees across variants within rounding") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 17u, 100u, 400u, 1023u}) {
    std::vector<double> a(n), b(n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
      mag += std::abs(a[i] * b[i]);
    }
    const double want = scalar_kernels().dot(a.data(), b.data(), n);
    for (const auto* t : all_tables()) {
      CAPTURE(n);
      CHECK(std::abs(t->dot(a.data(), b.data(), n) - want) <= 1e-12 * (mag + 1.0));
    }
  }
}

TEST_CASE("emphasize_window matches the recurrence on every variant") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 8u, 33u, 400u}) {
    std::vector<double> in(n), w(n), want(n), got(n);
    for (std::size_t i = 0; i < n; ++i) {
      in[i] = u(rng);
      w[i] = u(rng);
    }
    for (std::size_t i = 0; i < n; ++i) want[i] = (in[i] - (i ? 0.97 * in[i - 1] : 0.0)) * w[i];
    for (const auto* t : all_tables()) {
      CAPTURE(n);
      t->emphasize_window(in.data(), got.data(), n, 0.97, w.data());
      for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
    }
  }
}
