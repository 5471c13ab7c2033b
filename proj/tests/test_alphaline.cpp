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
#include <vector>

#include "kplane/alphaline.hpp"
#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/specfun.hpp"
#include "kplane/sphere.hpp"

using namespace kplane;

namespace {


RadialProfile central(const ScalarField& f, int order) {
  return profile_of(f, Point(f.dim, 0.0), SphereRule(f.dim, default_sphere_order(f.dim)), order);
}

/// Profile t -> exp(-t^2) built directly, without any field machinery.
RadialProfile gaussian_profile(int order) {
  RadialProfile p;
  p.evaluate = [](double t) { return std::exp(-t * t); };
  p.even = true;
  double c = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j % 2 == 0) {
      p.taylor.push_back(c);
      c *= -1.0 / (j / 2 + 1);
    } else {
      p.taylor.push_back(0.0);
    }
  }
  return p;
}

/// Profile t -> (1 + t^2)^-2 with its exact Taylor coefficients.
RadialProfile rational_profile(int order) {
  RadialProfile p;
  p.evaluate = [](double t) { return 1.0 / ((1.0 + t * t) * (1.0 + t * t)); };
  p.even = true;
  p.decay_exponent = 4.0;
  for (int j = 0; j <= order; ++j) {
    p.taylor.push_back(j % 2 ? 0.0 : ((j / 2) % 2 ? -1.0 : 1.0) * (j / 2 + 1));
  }
  return p;
}

/// Gamma((alpha+1)/2) Gamma((3-alpha)/2) / (2 Gamma(alpha+1)): x_+^alpha of
/// (1 + t^2)^-2.
cplx rational_closed_form(cplx alpha) {
  return kplane::gamma((alpha + 1.0) / 2.0) * kplane::gamma((3.0 - alpha) / 2.0) *
         reciprocal_gamma(alpha + 1.0) / 2.0;
}

/// Gamma((alpha+1)/2) / (2 Gamma(alpha+1)): x_+^alpha of exp(-t^2).
cplx gaussian_closed_form(cplx alpha) {
  return kplane::gamma((alpha + 1.0) / 2.0) * reciprocal_gamma(alpha + 1.0) / 2.0;
}

/// Composite Simpson on t = u^2 over [0, 12]: plain x_+^alpha for
/// -1 < Re alpha, no continuation involved.
cplx simpson_xplus(const RadialProfile& p, cplx alpha) {
  const int n = 200000;
  const double umax = std::sqrt(12.0);
  const double h = umax / n;
  cplx acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double u = i * h;
    const double w = (i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * 2.0 * u * std::pow(cplx(u * u), alpha) * p(u * u);
  }
  return acc * h / 3.0 * reciprocal_gamma(alpha + 1.0);
}

}  // namespace

TEST_CASE("x_+^alpha of the gaussian profile") {
  const ContinuationConfig cfg;
  const RadialProfile p = gaussian_profile(12);
  CHECK(std::abs(xplus(p, 0.0, cfg) - 0.886226925452758013649) < 1e-9);
  CHECK(std::abs(xplus(p, 1.0, cfg) - 0.5) < 1e-9);
  CHECK(std::abs(xplus(p, -1.5, cfg) - 0.691367339036293350533) < 1e-9);
  CHECK(std::abs(xplus(p, cplx(0.4, 0.2), cfg) -
                 cplx(0.731686870903315454290, -0.0807902367763624180448)) < 1e-9);
  CHECK(std::abs(xplus(p, cplx(-2.5, 0.3), cfg) -
                 cplx(-1.02052005225090513245, 0.680938520781476285872)) < 1e-8);
  CHECK(std::abs(xplus(p, cplx(-3.7, -0.6), cfg) -
                 cplx(-3.56399928866515099813, 1.72629623750869146760)) < 1e-8);
  // Frozen values above agree with the Gamma closed form.
  CHECK(std::abs(gaussian_closed_form(-1.5) - 0.691367339036293350533) < 1e-13);
}

TEST_CASE("x_+^alpha through field profiles matches the direct profile") {
  const ContinuationConfig cfg;
  for (int n : {1, 2, 3}) {
    const RadialProfile p = central(gaussian(n), 8);
    for (cplx a : {cplx(0.0), cplx(-1.5), cplx(-2.3, 0.4)}) {
      CHECK(std::abs(xplus(p, a, cfg) - gaussian_closed_form(a)) < 1e-8);
    }
  }
}

TEST_CASE("x_+^m at negative integers") {
  const RadialProfile p = gaussian_profile(8);
  CHECK(std::abs(xplus_at_negative_integer(p, -1) - 1.0) < 1e-15);
  CHECK(std::abs(xplus_at_negative_integer(p, -2)) < 1e-15);
  CHECK(std::abs(xplus_at_negative_integer(p, -3) + 2.0) < 1e-15);
  CHECK(std::abs(xplus_at_negative_integer(p, -4)) < 1e-15);
  // f''(0) by central differences.
  const double h = 1e-4;
  const double fd = (p(h) - 2.0 * p(0.0) + p(-h)) / (h * h);
  CHECK(fd == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK_THROWS_AS(xplus(p, -2.0, ContinuationConfig{}), Error);
}

TEST_CASE("x_+^alpha is continuous through negative integers") {
  const ContinuationConfig cfg;
  const RadialProfile p = gaussian_profile(12);
  for (int m : {-1, -2, -3, -4, -5}) {
    const cplx at = xplus_at_negative_integer(p, m);
    const cplx lo = xplus(p, m - 1e-4, cfg);
    const cplx hi = xplus(p, m + 1e-4, cfg);
    CHECK(std::abs(lo - at) < 1e-2);
    CHECK(std::abs(hi - at) < 1e-2);
    CHECK(std::abs(0.5 * (lo + hi) - at) < 1e-6);
  }
}

TEST_CASE("x_+^alpha does not depend on the split radius") {
  const RadialProfile p = gaussian_profile(12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-5.9, 0.9), im(-1.0, 1.0);
  int tested = 0;
  while (tested < 10) {
    const cplx a(re(rng), im(rng));
    if (std::abs(a.real() - std::round(a.real())) < 1e-2) continue;
    ++tested;
    ContinuationConfig base;
    const cplx v = xplus(p, a, base);
    for (double rho : {0.3, 0.8}) {
      ContinuationConfig cfg;
      cfg.rho = rho;
      CHECK(std::abs(xplus(p, a, cfg) - v) < 10.0 * cfg.tolerance * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("x_+^alpha satisfies the mean-value property on alpha-circles") {
  const ContinuationConfig cfg;
  const RadialProfile p = gaussian_profile(12);
  for (cplx c : {cplx(-0.5, 0.2), cplx(-2.5, 0.0), cplx(-3.4, -0.5)}) {
    const double radius = 0.2;
    cplx avg = 0.0;
    for (int j = 0; j < 16; ++j) {
      avg += xplus(p, c + std::polar(radius, 2.0 * kPi * j / 16), cfg);
    }
    avg /= 16.0;
    CHECK(std::abs(avg - xplus(p, c, cfg)) < 10.0 * cfg.tolerance);
  }
}

TEST_CASE("three-term form equals the plain integral inside the strip") {
  const ContinuationConfig cfg;
  const RadialProfile g = gaussian_profile(8);
  const RadialProfile r = central(rational_decay(2, 4.0), 4);
  for (const RadialProfile* p : {&g, &r}) {
    for (cplx a : {cplx(-0.5), cplx(0.4, 0.2), cplx(1.7, -0.3)}) {
      const cplx plain = xplus(*p, a, cfg);
      for (int l : {0, 2, 4}) {
        CHECK(std::abs(xplus_split(*p, a, l, cfg) - plain) < 10.0 * cfg.tolerance);
      }
    }
  }
  // Independent Simpson quadrature on the gaussian.
  for (cplx a : {cplx(0.4, 0.2), cplx(1.7, -0.3)}) {
    CHECK(std::abs(simpson_xplus(g, a) - xplus(g, a, cfg)) < 1e-8);
  }
}

TEST_CASE("x_+^alpha of a rational profile") {
  const ContinuationConfig cfg;
  const RadialProfile exact = rational_profile(12);
  const RadialProfile numeric = central(rational_decay(2, 4.0), 4);
  for (cplx a : {cplx(0.3), cplx(-1.6, 0.5), cplx(-3.3, -0.2), cplx(-4.2)}) {
    const cplx want = rational_closed_form(a);
    CHECK(std::abs(xplus(exact, a, cfg) - want) < 1e-8 * std::max(1.0, std::abs(want)));
    // Differentiated Taylor data limits the field profile far left.
    CHECK(std::abs(xplus(numeric, a, cfg) - want) < 1e-6 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("x_+^alpha is linear in the profile") {
  const ContinuationConfig cfg;
  const RadialProfile p = gaussian_profile(8);
  const RadialProfile q = rational_profile(12);
  RadialProfile s;
  s.evaluate = [&](double t) { return 2.0 * p(t) - 3.0 * q(t); };
  s.even = true;
  s.decay_exponent = q.decay_exponent;
  s.local_class = q.local_class;
  for (std::size_t j = 0; j < q.taylor.size() && j < p.taylor.size(); ++j) {
    s.taylor.push_back(2.0 * p.taylor[j] - 3.0 * q.taylor[j]);
  }
  for (cplx a : {cplx(0.3), cplx(-1.6, 0.5), cplx(-4.2)}) {
    const cplx lhs = xplus(s, a, cfg);
    const cplx rhs = 2.0 * xplus(p, a, cfg) - 3.0 * xplus(q, a, cfg);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("x_+^alpha reports its errors") {
  const ContinuationConfig cfg;
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind{};
  };
  const RadialProfile g = gaussian_profile(2);
  CHECK(kind_of([&] { xplus(g, -1.0, cfg); }) == ErrorKind::kNegativeInteger);
  CHECK(kind_of([&] { xplus(g, -5.5, cfg); }) == ErrorKind::kMissingCoefficient);
  const RadialProfile r = central(rational_decay(2, 2.0), 4);
  CHECK(kind_of([&] { xplus(r, 1.5, cfg); }) == ErrorKind::kStripViolation);
  ContinuationConfig bad;
  bad.rho = 1.5;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kInvalidArgument);
  bad = ContinuationConfig{};
  bad.truncation_radius = 0.5;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kInvalidArgument);
  bad = ContinuationConfig{};
  bad.inner_order = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("minimal Taylor orders") {
  const LocalClass smooth{};
  CHECK(minimal_taylor_order(-0.5, smooth) == -1);
  CHECK(minimal_taylor_order(-1.5, smooth) == 0);
  CHECK(minimal_taylor_order(-2.5, smooth) == 1);
  CHECK(minimal_taylor_order(-4.2, smooth) == 3);
  const LocalClass plan_class{};
  const TaylorPlan plan = plan_taylor_order(-4.6, plan_class, ContinuationConfig{});
  CHECK(plan.required == 3);
  CHECK(plan.target >= 8);
}

TEST_CASE("right limits at s = -1") {
  const ContinuationConfig cfg;
  std::vector<double> seq;
  for (int j = 1; j <= 4; ++j) seq.push_back(-1.0 + std::pow(10.0, -j));
  const LimitTrace g = xplus_right_limit(gaussian_profile(4), seq, cfg);
  CHECK(std::abs(g.estimate - 1.0) < 1e-4);
  CHECK(g.values.size() == seq.size());

  std::vector<double> fine;
  for (int j = 2; j <= 12; ++j) fine.push_back(-1.0 + std::ldexp(1.0, -j));
  const LimitTrace lm = xplus_right_limit(central(log_modulus(2), 0), fine, cfg);
  CHECK(std::abs(lm.estimate) < 1e-3);

  RadialProfile b;
  b.evaluate = cutoff_profile;
  b.taylor = {1.0};
  b.even = true;
  b.breakpoints = {0.5, 1.0};
  b.support_hi = 1.0;
  const LimitTrace bl = xplus_right_limit(b, seq, cfg);
  CHECK(std::abs(bl.estimate - 1.0) < 1e-4);
}

TEST_CASE("extrapolation recovers first-order sequences") {
  std::vector<double> s;
  std::vector<cplx> v;
  for (int j = 1; j <= 6; ++j) {
    const double e = std::ldexp(1.0, -j);
    s.push_back(-1.0 + e);
    v.push_back(cplx(2.0, -1.0) + 3.0 * e);
  }
  const LimitTrace t = extrapolate_limit(s, v, -1.0);
  CHECK(std::abs(t.estimate - cplx(2.0, -1.0)) < 1e-13);
  CHECK(t.converged);
  // A quadratic term leaves 0.5 * h_(m-1) * h_m after one linear step.
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += 0.5 * std::pow(s[j] + 1.0, 2);
  const LimitTrace q = extrapolate_limit(s, v, -1.0);
  CHECK(std::abs(q.estimate - cplx(2.0, -1.0)) == doctest::Approx(0.5 * std::ldexp(1.0, -11)));
}

TEST_CASE("r^alpha of the planar gaussian") {
  const ContinuationConfig cfg;
  const SphereRule rule(2, default_sphere_order(2));
  const Point origin{0.0, 0.0};
  const ScalarField g = gaussian(2);
  CHECK(std::abs(r_alpha(g, 0.0, origin, cfg, rule) - kPi) < 1e-8);
  CHECK(std::abs(r_alpha(g, -1.0, origin, cfg, rule) - std::pow(kPi, 1.5)) < 1e-8);
  CHECK(std::abs(r_alpha(g, -2.0, origin, cfg, rule) - 2.0 * kPi) < 1e-12);
  // Direct polar quadrature of |x|^0 exp(-|x|^2) / Gamma(2) as an oracle.
  double direct = 0.0;
  const int m = 4000;
  const double h = 8.0 / m;
  for (int i = 0; i < m; ++i) {
    const double r = (i + 0.5) * h;
    direct += 2.0 * kPi * r * std::exp(-r * r) * h;
  }
  CHECK(direct == doctest::Approx(kPi).epsilon(1e-6));
}
