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
#include <random>
#include <vector>

#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/radon.hpp"
#include "kplane/riesz.hpp"
#include "kplane/specfun.hpp"
#include "kplane/sphere.hpp"

using namespace kplane;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

SphereRule rule_for(int n) { return SphereRule(n, default_sphere_order(n)); }

Point random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Point v(n);
  for (double& c : v) c = g(rng);
  const double s = norm(v);
  for (double& c : v) c /= s;
  return v;
}

/// Random plane with an orthonormal frame and offset of the given length.
KPlane random_plane(std::mt19937_64& rng, const Dimension& dim, double distance) {
  const std::vector<Point> frame = sample_frames(dim, 1, rng())[0];
  Point off = random_unit(rng, dim.n());
  for (const Point& f : frame) {
    double d = 0.0;
    for (int i = 0; i < dim.n(); ++i) d += off[i] * f[i];
    for (int i = 0; i < dim.n(); ++i) off[i] -= d * f[i];
  }
  const double s = norm(off);
  for (double& c : off) c *= distance / s;
  return KPlane(frame, off);
}

double dual(const ScalarField& f, const Point& x, int k) {
  return dual_composite(f, x, Dimension(f.dim, k), ContinuationConfig{}, rule_for(f.dim));
}

}  // namespace

TEST_CASE("forward transform of the gaussian") {
  const ScalarField g2 = gaussian(2);
  CHECK(forward(g2, KPlane({{1.0, 0.0}}, {0.0, 0.0})) == doctest::Approx(kSqrtPi).epsilon(1e-12));
  const ScalarField g3 = gaussian(3);
  CHECK(forward(g3, KPlane({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, {0.0, 0.0, 1.0})) ==
        doctest::Approx(1.15572734979092171791).epsilon(1e-12));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  for (const Dimension& dim : {Dimension(2, 1), Dimension(3, 1), Dimension(3, 2)}) {
    for (int i = 0; i < 10; ++i) {
      const double d = dist(rng);
      const KPlane p = random_plane(rng, dim, d);
      CHECK(forward(gaussian(dim.n()), p) ==
            doctest::Approx(std::pow(std::numbers::pi, dim.k() / 2.0) * std::exp(-d * d))
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("forward transform edge cases") {
  const ScalarField cap = hoelder_cap(2, 0.75);
  CHECK(forward(cap, KPlane({{0.0, 1.0}}, {1.0, 0.0})) == 0.0);
  CHECK(forward(cap, KPlane({{0.0, 1.0}}, {-2.5, 0.0})) == 0.0);
  // Chord at distance 0.6: the half cap integrates to pi (1 - d^2) / 2.
  const ScalarField half = hoelder_cap(2, 0.5);
  CHECK(forward(half, KPlane({{0.0, 1.0}}, {0.6, 0.0})) ==
        doctest::Approx(std::numbers::pi * 0.64 / 2.0).epsilon(1e-10));
  CHECK_THROWS_AS(forward(rational_decay(2, 1.0), KPlane({{1.0, 0.0}}, {0.0, 0.0})), Error);
  CHECK_THROWS_AS(KPlane({{1.0, 0.1}}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(KPlane({{1.0, 0.0}}, {0.5, 0.5}), Error);
}

TEST_CASE("forward transform is frame invariant") {
  const ScalarField f = translate(rational_decay(3, 4.0), Point{0.3, -0.2, 0.1});
  const std::vector<Point> frame{{1.0, 0.0, 0.0}, {0.0, 0.6, 0.8}};
  const Point off{0.0, 0.8, -0.6};
  const double base = forward(f, KPlane(frame, off));
  for (double th : {0.4, 1.3, 2.9}) {
    const double c = std::cos(th), s = std::sin(th);
    std::vector<Point> rot(2, Point(3));
    for (int i = 0; i < 3; ++i) {
      rot[0][i] = c * frame[0][i] + s * frame[1][i];
      rot[1][i] = -s * frame[0][i] + c * frame[1][i];
    }
    CHECK(std::abs(forward(f, KPlane(rot, off)) - base) < 1e-10);
  }
}

TEST_CASE("dual transform values") {
  CHECK(dual(gaussian(2), {0.0, 0.0}, 1) == doctest::Approx(kSqrtPi).epsilon(1e-10));
  CHECK(dual(gaussian(3), {0.0, 0.0, 0.0}, 2) == doctest::Approx(std::numbers::pi).epsilon(1e-10));
  // Dual of the gaussian at x averages pi^(k/2) exp(-d^2) over planes through x.
  const Point x{1.0, 0.0};
  const PlaneIntegralOracle o = forward_oracle(gaussian(2));
  const auto frames = sample_frames(Dimension(2, 1), 512, 3);
  CHECK(dual_sampled(o, x, Dimension(2, 1), frames) ==
        doctest::Approx(dual(gaussian(2), x, 1)).epsilon(1e-3));
  CHECK(dual_sampled(o, Point{0.0, 0.0}, Dimension(2, 1), sample_frames(Dimension(2, 1), 7, 5)) ==
        doctest::Approx(kSqrtPi).epsilon(1e-12));
  PlaneIntegralOracle constant{[](const KPlane&) { return 2.5; }};
  CHECK(dual_sampled(constant, x, Dimension(2, 1), frames) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("dual of the cap is positive and decays") {
  const ScalarField cap = hoelder_cap(2, 0.75);
  double prev = kInf;
  for (double r : {0.0, 0.9, 1.5, 3.0, 6.0, 12.0}) {
    const double v = dual(cap, Point{r, 0.0}, 1);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("dual transform is proportional to the order-k potential") {
  const ContinuationConfig cfg;
  for (const Dimension& dim : {Dimension(2, 1), Dimension(3, 1), Dimension(3, 2)}) {
    const int n = dim.n();
    const ScalarField g = gaussian(n);
    std::vector<Point> pts{Point(n, 0.0)};
    std::mt19937_64 rng(17 + n * 3 + dim.k());
    for (int i = 0; i < 4; ++i) {
      Point p = random_unit(rng, n);
      for (double& c : p) c *= 0.4 * (i + 1);
      pts.push_back(p);
    }
    for (const Point& x : pts) CHECK(dual_riesz_defect(g, x, dim, cfg, rule_for(n)) < 1e-5);
  }
  CHECK(dual_riesz_defect(gaussian(2), Point{0.0, 0.0}, Dimension(2, 1), cfg, rule_for(2)) < 1e-6);
  CHECK(dual_riesz_defect(gaussian(3), Point{0.0, 0.0, 0.0}, Dimension(3, 2), cfg, rule_for(3)) <
        1e-6);
  CHECK(dual_riesz_defect(hoelder_cap(2, 0.75), Point{0.0, 0.0}, Dimension(2, 1), cfg,
                          rule_for(2)) < 1e-4);
  CHECK(dual_riesz_constant(Dimension(3, 2)) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(dual_riesz_constant(Dimension(2, 1)) == doctest::Approx(2.0));
}

TEST_CASE("forward and dual transforms are linear") {
  const ScalarField a = gaussian(2);
  const ScalarField b = translate(hoelder_cap(2, 0.75), Point{0.4, 0.2});
  const ScalarField s = sum(scale(a, 3.0), b);
  const KPlane plane({{0.6, 0.8}}, {0.8 * 0.3, -0.6 * 0.3});
  CHECK(forward(s, plane) == doctest::Approx(3.0 * forward(a, plane) + forward(b, plane)).epsilon(1e-10));
  const Point x{0.5, -0.7};
  CHECK(dual(s, x, 1) == doctest::Approx(3.0 * dual(a, x, 1) + dual(b, x, 1)).epsilon(1e-7));
  const auto frames = sample_frames(Dimension(2, 1), 64, 9);
  const double lhs = dual_sampled(forward_oracle(s), x, Dimension(2, 1), frames);
  const double rhs = 3.0 * dual_sampled(forward_oracle(a), x, Dimension(2, 1), frames) +
                     dual_sampled(forward_oracle(b), x, Dimension(2, 1), frames);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("sampled frames are orthonormal and reproducible") {
  for (const Dimension& dim : {Dimension(2, 1), Dimension(3, 1), Dimension(3, 2), Dimension(4, 3)}) {
    const auto a = sample_frames(dim, 20, 42);
    const auto b = sample_frames(dim, 20, 42);
    CHECK(a == b);
    for (const auto& frame : a) {
      REQUIRE(static_cast<int>(frame.size()) == dim.k());
      for (int i = 0; i < dim.k(); ++i) {
        for (int j = 0; j < dim.k(); ++j) {
          double d = 0.0;
          for (int c = 0; c < dim.n(); ++c) d += frame[i][c] * frame[j][c];
          CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("dual fields carry their increments") {
  const ContinuationConfig cfg;
  const ScalarField d = dual_field(gaussian(2), Dimension(2, 1), cfg, rule_for(2));
  REQUIRE(d.radial_increment);
  const double c = d(Point{0.0, 0.0});
  for (double t : {1e-6, 1e-3, 0.3}) {
    const double inc = (*d.radial_increment)(t);
    CHECK(inc < 0.0);
    if (t > 1e-4) CHECK(inc == doctest::Approx(d(Point{t, 0.0}) - c).epsilon(1e-6));
  }
  // Small increments scale like t^2 near the center.
  const double r = (*d.radial_increment)(1e-6) / (*d.radial_increment)(2e-6);
  CHECK(r == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(d.decay_exponent == doctest::Approx(1.0));
}

TEST_CASE("sinogram of the planar gaussian") {
  const auto rows = sinogram(gaussian(2), 8, 16, 2.0);
  REQUIRE(rows.size() == 8 * 16);
  for (const SinogramRow& row : rows) {
    CHECK(row.angle >= 0.0);
    CHECK(row.angle < std::numbers::pi);
    CHECK(std::abs(row.offset) < 2.0);
    CHECK(row.value == doctest::Approx(kSqrtPi * std::exp(-row.offset * row.offset)).epsilon(1e-10));
  }
}
