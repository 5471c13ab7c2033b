// Copyright 2026 The kplane Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kplane/error.hpp"
#include "kplane/specfun.hpp"

using namespace kplane;

namespace {

bool raises(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("gamma at small arguments") {
  CHECK(std::abs(kplane::gamma(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(kplane::gamma(0.5) - 1.7724538509055160273) < 1e-13);
  CHECK(std::abs(kplane::gamma(-0.5) - (-3.5449077018110320546)) < 1e-13);
  CHECK(raises(ErrorKind::kPole, [] { kplane::gamma(0.0); }));
  CHECK(raises(ErrorKind::kPole, [] { kplane::gamma(-3.0); }));
}

TEST_CASE("gamma satisfies the reflection formula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 30; ++i) {
    const cplx z(u(rng), u(rng));
    const cplx lhs = kplane::gamma(z) * kplane::gamma(1.0 - z);
    const cplx rhs = kPi / std::sin(kPi * z);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("gamma matches the standard library on the real line") {
  for (double x : {0.1, 0.7, 1.5, 3.25, 7.9, 12.0, -0.3, -1.7, -4.2}) {
    CHECK(std::abs(kplane::gamma(cplx(x)).real() - std::tgamma(x)) < 1e-12 * std::abs(std::tgamma(x)));
  }
}

TEST_CASE("reciprocal gamma is entire") {
  CHECK(std::abs(reciprocal_gamma(1.0) - 1.0) < 1e-14);
  CHECK(reciprocal_gamma(0.0) == cplx(0.0));
  CHECK(reciprocal_gamma(-2.0) == cplx(0.0));
  CHECK(std::abs(reciprocal_gamma(2.0) - 1.0) < 1e-14);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 40; ++i) {
    const cplx z(u(rng), u(rng));
    if (is_nonpositive_integer(z)) continue;
    CHECK(std::abs(reciprocal_gamma(z) * kplane::gamma(z) - 1.0) < 1e-12);
  }
}

TEST_CASE("H_n values, zeros and poles") {
  CHECK(std::abs(h_n(2, 1.0) - 2.0 * kPi) < 1e-12);
  CHECK(h_n(2, 2.0) == cplx(0.0));
  CHECK(h_n(3, 5.0) == cplx(0.0));
  CHECK(raises(ErrorKind::kPole, [] { h_n(3, 0.0); }));
  CHECK(raises(ErrorKind::kPole, [] { h_n(2, -4.0); }));
  CHECK(reciprocal_h_n(3, 0.0) == cplx(0.0));
  CHECK(raises(ErrorKind::kPole, [] { reciprocal_h_n(2, 2.0); }));
}

TEST_CASE("H_n residues") {
  CHECK(std::abs(h_n_residue(2, 0) - 2.0 * kPi) < 1e-12);
  CHECK(std::abs(h_n_residue(3, 0) - 4.0 * kPi) < 1e-12);
  // (alpha + 2) H_2(alpha) near -2: Gamma(alpha/2) ~ -2/(alpha+2) gives -pi/2
  CHECK(std::abs(h_n_residue(2, 1) - (-kPi / 2.0)) < 1e-12);
  // one-sided: first order in t; two-sided mean: second order
  for (int n : {1, 2, 3, 4}) {
    for (int m : {0, 1, 2, 3}) {
      const double t = 1e-4;
      const cplx right = t * h_n(n, -2.0 * m + t);
      const cplx left = -t * h_n(n, -2.0 * m - t);
      const double res = h_n_residue(n, m);
      CHECK(std::abs(right - res) < 1e-3 * std::abs(res));
      CHECK(std::abs(0.5 * (right + left) - res) < 1e-6);
    }
  }
}

TEST_CASE("surface measures and inversion constants") {
  CHECK(omega(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(omega(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(omega(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(inversion_constant(Dimension(2, 1)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inversion_constant(Dimension(3, 1)) ==
        doctest::Approx(std::pow(4.0 * kPi, -0.5) / std::tgamma(1.5)).epsilon(1e-14));
  CHECK(inversion_constant(Dimension(3, 2)) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(raises(ErrorKind::kInvalidArgument, [] { Dimension(2, 2); }));
  CHECK(raises(ErrorKind::kInvalidArgument, [] { Dimension(3, 0); }));
}

TEST_CASE("duplication identity in the convergent strip") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    std::uniform_real_distribution<double> re(0.05, n - 0.05);
    std::uniform_real_distribution<double> im(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const cplx a(re(rng), im(rng));
      const cplx lhs = kplane::gamma(a) / h_n(n, a);
      const cplx rhs = 0.5 * std::pow(kPi, -(n + 1) / 2.0) * kplane::gamma((double(n) - a) / 2.0) *
                       kplane::gamma((a + 1.0) / 2.0);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
  }
}
