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
#include <numbers>
#include <vector>

#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/riesz.hpp"
#include "kplane/specfun.hpp"
#include "kplane/sphere.hpp"

using namespace kplane;

namespace {


SphereRule rule_for(int n) { return SphereRule(n, default_sphere_order(n)); }

cplx potential(const ScalarField& f, cplx alpha, const Point& x) {
  return riesz(f, alpha, x, ContinuationConfig{}, rule_for(f.dim));
}

/// Gamma((n-alpha)/2) / (2^alpha Gamma(n/2)): I^alpha of the gaussian at 0.
cplx gaussian_at_center(int n, cplx alpha) {
  return kplane::gamma((double(n) - alpha) / 2.0) * std::pow(cplx(2.0), -alpha) /
         std::tgamma(n / 2.0);
}

/// Planar potential by polar quadrature around x with r = u^(1/alpha), so
/// r^(alpha-1) dr = du / alpha; real 0 < alpha < 2 only. Beyond `rmax` the
/// field is taken as |y|^-a, which adds 2 pi rmax^(alpha-a) / (a - alpha).
double planar_potential(const ScalarField& f, double alpha, const Point& x,
                        double rmax = 9.0, double a = kInf, int nu = 6000) {
  const double h_const = std::pow(2.0, alpha) * kPi * std::tgamma(alpha / 2.0) /
                         std::tgamma((2.0 - alpha) / 2.0);
  const double umax = std::pow(rmax, alpha);
  const int nt = 96;
  const double du = umax / nu;
  double acc = 0.0;
  for (int i = 0; i <= nu; ++i) {
    const double r = std::pow(i * du, 1.0 / alpha);
    double ring = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double th = 2.0 * kPi * j / nt;
      ring += f(Point{x[0] + r * std::cos(th), x[1] + r * std::sin(th)});
    }
    ring *= 2.0 * kPi / nt;
    const double w = (i == 0 || i == nu) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * ring;
  }
  const double tail = std::isfinite(a) ? 2.0 * kPi * std::pow(rmax, alpha - a) / (a - alpha) : 0.0;
  return (acc * du / 3.0 / alpha + tail) / h_const;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind{};
}

}  // namespace

TEST_CASE("potentials of the gaussian at its center") {
  CHECK(std::abs(potential(gaussian(2), 1.0, {0.0, 0.0}) - std::sqrt(kPi) / 2.0) < 1e-9);
  CHECK(std::abs(potential(gaussian(3), 2.0, {0.0, 0.0, 0.0}) - 0.5) < 1e-9);
  CHECK(std::abs(potential(gaussian(2), 0.0, {0.0, 0.0}) - 1.0) < 1e-12);
  for (int n : {1, 2, 3}) {
    for (cplx a : {cplx(0.5), cplx(0.6, 0.3), cplx(-0.7), cplx(-1.5, -0.4), cplx(-3.2)}) {
      if (a.real() >= n) continue;
      const Point origin(n, 0.0);
      CHECK(std::abs(potential(gaussian(n), a, origin) - gaussian_at_center(n, a)) <
            1e-8 * std::max(1.0, std::abs(gaussian_at_center(n, a))));
    }
  }
}

TEST_CASE("potentials agree with planar quadrature off center") {
  const ScalarField g = gaussian(2);
  for (double a : {0.5, 1.0, 1.5}) {
    for (const Point& x : {Point{0.7, 0.2}, Point{-1.1, 0.4}}) {
      CHECK(potential(g, a, x).real() == doctest::Approx(planar_potential(g, a, x)).epsilon(1e-5));
    }
  }
  const ScalarField r = rational_decay(2, 3.0);
  CHECK(potential(r, 0.5, Point{0.3, -0.4}).real() ==
        doctest::Approx(planar_potential(r, 0.5, Point{0.3, -0.4}, 400.0, 3.0, 40000)).epsilon(1e-5));
}

TEST_CASE("order zero and order -2 are local") {
  const ScalarField g = gaussian(2);
  for (const Point& x : {Point{0.0, 0.0}, Point{0.6, -0.3}, Point{1.4, 0.9}}) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    CHECK(std::abs(potential(g, 0.0, x) - g(x)) < 1e-9);
    // I^-2 is minus the Laplacian.
    CHECK(std::abs(potential(g, -2.0, x) - (4.0 - 4.0 * r2) * std::exp(-r2)) < 1e-6);
  }
}

TEST_CASE("right limits at order zero") {
  const ContinuationConfig cfg;
  std::vector<double> seq;
  for (int j = 2; j <= 8; ++j) seq.push_back(std::ldexp(1.0, -j));
  const Point origin{0.0, 0.0};
  const LimitTrace g = riesz_right_limit(gaussian(2), 0.0, seq, origin, cfg, rule_for(2));
  CHECK(std::abs(g.estimate - 1.0) < 1e-4);
  const LimitTrace c = riesz_right_limit(hoelder_cap(2, 0.75), 0.0, seq, origin, cfg, rule_for(2));
  CHECK(std::abs(c.estimate - 1.0) < 1e-3);
  std::vector<double> fine;
  for (int j = 2; j <= 12; ++j) fine.push_back(std::ldexp(1.0, -j));
  const LimitTrace l = riesz_right_limit(log_modulus(2), 0.0, fine, origin, cfg, rule_for(2));
  CHECK(std::abs(l.estimate) < 1e-3);
}

TEST_CASE("semigroup law") {
  const ContinuationConfig cfg;
  CHECK(semigroup_defect(gaussian(2), 0.5, 0.5, Point{0.0, 0.0}, cfg, rule_for(2)) < 1e-5);
  CHECK(semigroup_defect(gaussian(3), 0.7, 0.9, Point{0.0, 0.0, 0.0}, cfg, rule_for(3)) < 1e-5);
  CHECK(std::abs(potential(gaussian(3), 1.6, {0.0, 0.0, 0.0}) - gaussian_at_center(3, 1.6)) < 1e-9);
  CHECK(kind_of([&] {
          semigroup_defect(gaussian(2), 0.0, 0.5, Point{0.0, 0.0}, cfg, rule_for(2));
        }) == ErrorKind::kStripViolation);
  CHECK(kind_of([&] {
          semigroup_defect(gaussian(2), 1.2, 0.9, Point{0.0, 0.0}, cfg, rule_for(2));
        }) == ErrorKind::kStripViolation);
}

TEST_CASE("beta integral identity") {
  const BetaIdentity one = beta_identity_check(1, 0.4, 0.4);
  CHECK(one.numeric == doctest::Approx(one.closed_form).epsilon(1e-4));
  const BetaIdentity two = beta_identity_check(2, 0.6, 0.7);
  CHECK(two.numeric == doctest::Approx(two.closed_form).epsilon(1e-4));
  const cplx want = h_n(2, 0.6) * h_n(2, 0.7) / h_n(2, 1.3);
  CHECK(two.closed_form == doctest::Approx(want.real()).epsilon(1e-14));
}

TEST_CASE("translation equivariance and rotation invariance") {
  const ScalarField g = gaussian(2);
  const Point v{0.8, -1.3};
  const ScalarField t = translate(g, v);
  for (cplx a : {cplx(1.0), cplx(-0.5, 0.2), cplx(-1.0)}) {
    for (const Point& x : {Point{0.2, 0.1}, Point{-0.9, 0.5}}) {
      const Point xv{x[0] + v[0], x[1] + v[1]};
      CHECK(std::abs(potential(t, a, xv) - potential(g, a, x)) < 1e-8);
    }
  }
  for (cplx a : {cplx(0.7), cplx(-0.6)}) {
    const cplx ref = potential(g, a, Point{0.8, 0.0});
    for (int j = 1; j < 6; ++j) {
      const double th = 2.0 * kPi * j / 6 + 0.1;
      CHECK(std::abs(potential(g, a, Point{0.8 * std::cos(th), 0.8 * std::sin(th)}) - ref) < 1e-8);
    }
  }
}

TEST_CASE("potentials are linear in the field") {
  const ScalarField a = gaussian(2);
  const ScalarField b = translate(rational_decay(2, 3.0), Point{0.4, 0.0});
  const ScalarField s = sum(a, scale(b, -2.0));
  const Point x{0.1, 0.3};
  for (cplx alpha : {cplx(0.5), cplx(-0.5)}) {
    const cplx rhs = potential(a, alpha, x) - 2.0 * potential(b, alpha, x);
    CHECK(std::abs(potential(s, alpha, x) - rhs) < 1e-7);
  }
}

TEST_CASE("poles and strip violations") {
  CHECK(kind_of([] { potential(gaussian(2), 2.0, {0.0, 0.0}); }) == ErrorKind::kPole);
  CHECK(kind_of([] { potential(gaussian(3), 3.0, {0.0, 0.0, 0.0}); }) == ErrorKind::kPole);
  CHECK(kind_of([] { potential(rational_decay(2, 1.5), 1.7, {0.0, 0.0}); }) ==
        ErrorKind::kStripViolation);
}

TEST_CASE("propagated metadata") {
  CHECK(potential_decay(gaussian(2), 1.0) == doctest::Approx(1.0));
  CHECK(potential_decay(rational_decay(3, 2.5), 0.5) == doctest::Approx(2.0));
  const LocalClass holder = potential_class(LocalClass{0, 0.5}, 1.0);
  CHECK(holder.order == 1);
  CHECK(holder.hoelder == doctest::Approx(0.5));
  const LocalClass cont = potential_class(LocalClass{0, 0.0}, 2.0);
  CHECK(cont.order == 1);
  CHECK(cont.is_hoelder());
}

TEST_CASE("potential fields match direct evaluation") {
  const ContinuationConfig cfg;
  const ScalarField g = gaussian(2);
  const ScalarField p = riesz_field(g, 1.0, cfg, rule_for(2));
  for (const Point& x : {Point{0.0, 0.0}, Point{0.5, 0.5}, Point{2.0, -1.0}, Point{7.0, 0.0}}) {
    CHECK(p(x) == doctest::Approx(potential(g, 1.0, x).real()).epsilon(1e-8));
  }
}

TEST_CASE("minus-one order inverts order one") {
  const ContinuationConfig cfg;
  const ScalarField g = gaussian(2);
  const ScalarField p = riesz_field(g, 1.0, cfg, rule_for(2));
  for (const Point& x : {Point{0.0, 0.0}, Point{0.5, 0.0}, Point{-0.3, 0.8},
                         Point{1.0, 1.0}, Point{0.0, -1.5}}) {
    CHECK(std::abs(riesz(p, -1.0, x, cfg, rule_for(2)).real() - g(x)) < 1e-3);
  }
}
