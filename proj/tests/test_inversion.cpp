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
#include <sstream>
#include <string>
#include <vector>

#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/inversion.hpp"
#include "kplane/riesz.hpp"
#include "kplane/specfun.hpp"
#include "kplane/sphere.hpp"

using namespace kplane;

namespace {

SphereRule rule_for(int n) { return SphereRule(n, default_sphere_order(n)); }

const std::vector<Point> kFivePoints{
    {0.0, 0.0}, {0.5, 0.0}, {-0.3, 0.8}, {1.0, 1.0}, {0.0, -1.5}};

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind{};
}

}  // namespace

TEST_CASE("Hoelder route recovers catalog fields") {
  const ContinuationConfig cfg;
  const InversionReport g =
      invert_hoelder(gaussian(2), Dimension(2, 1), kFivePoints, cfg, rule_for(2));
  g.validate();
  CHECK(g.route == "hoelder");
  CHECK(g.max_abs_error() < 1e-3);
  CHECK(g.recovered[0] == doctest::Approx(1.0).epsilon(1e-6));
  const InversionReport c =
      invert_hoelder(hoelder_cap(2, 0.75), Dimension(2, 1), {Point{0.0, 0.0}}, cfg, rule_for(2));
  CHECK(c.recovered[0] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(inversion_constant(Dimension(2, 1)) == doctest::Approx(0.5));
}

TEST_CASE("Hoelder route rejects fields outside its class") {
  const ContinuationConfig cfg;
  CHECK(kind_of([&] {
          invert_hoelder(log_modulus(2), Dimension(2, 1), {Point{0.0, 0.0}}, cfg, rule_for(2));
        }) == ErrorKind::kClassViolation);
  CHECK(kind_of([&] {
          invert_hoelder(rational_decay(2, 1.0), Dimension(2, 1), {Point{0.0, 0.0}}, cfg,
                         rule_for(2));
        }) == ErrorKind::kClassViolation);
}

TEST_CASE("limit route agrees with the Hoelder route") {
  const ContinuationConfig cfg;
  const InversionReport h =
      invert_hoelder(gaussian(2), Dimension(2, 1), kFivePoints, cfg, rule_for(2));
  const InversionReport l = invert_limit(gaussian(2), Dimension(2, 1), kFivePoints,
                                         default_s_sequence(1), cfg, rule_for(2));
  l.validate();
  REQUIRE(l.traces.size() == kFivePoints.size());
  for (std::size_t i = 0; i < kFivePoints.size(); ++i) {
    CHECK(std::abs(l.recovered[i] - h.recovered[i]) < 1e-3);
    CHECK(l.traces[i].values.size() == default_s_sequence(1).size());
  }
}

TEST_CASE("default order sequence") {
  const std::vector<double> s = default_s_sequence(2);
  REQUIRE(s.size() == 7);
  CHECK(s.front() == -2.0 + 0.25);
  CHECK(s.back() == -2.0 + std::ldexp(1.0, -8));
}

TEST_CASE("Laplacian route on the gaussian in three dimensions") {
  const ContinuationConfig cfg;
  const ScalarField g = gaussian(3);
  const Point origin{0.0, 0.0, 0.0};
  const InversionReport a =
      invert_laplacian(g, Dimension(3, 2), GridSpec::centered(origin, 1, 0.05), cfg, rule_for(3));
  a.validate();
  REQUIRE(a.points.size() == 1);
  CHECK(a.recovered[0] == doctest::Approx(1.0).epsilon(1e-2));
  REQUIRE(a.darboux);
  CHECK(a.darboux->expected[0] == doctest::Approx(-2.0 * std::numbers::pi));
  CHECK(a.darboux->measured[0] == doctest::Approx(-2.0 * std::numbers::pi).epsilon(1e-2));

  const InversionReport b =
      invert_laplacian(g, Dimension(3, 2), GridSpec::centered(origin, 1, 0.025), cfg, rule_for(3));
  CHECK(a.abs_error[0] / b.abs_error[0] == doctest::Approx(4.0).epsilon(0.1));

  const InversionReport h = invert_hoelder(g, Dimension(3, 2), {origin}, cfg, rule_for(3));
  CHECK(std::abs(a.recovered[0] - h.recovered[0]) < 1e-2);

  const InversionReport off = invert_laplacian(
      g, Dimension(3, 2), GridSpec::centered(Point{1.0, 0.0, 0.0}, 1, 0.05), cfg, rule_for(3));
  CHECK(off.recovered[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-2));
}

TEST_CASE("Laplacian route preconditions") {
  const ContinuationConfig cfg;
  const Point origin{0.0, 0.0};
  CHECK(kind_of([&] {
          invert_laplacian(gaussian(2), Dimension(2, 1), GridSpec::centered(origin, 2, 0.05), cfg,
                           rule_for(2));
        }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([&] {
          invert_laplacian(gaussian(3), Dimension(3, 2), GridSpec{Point(3, 0.0), {2, 2, 2}, 0.05}, cfg,
                           rule_for(3));
        }) == ErrorKind::kGridTooSmall);
  GridSpec bad = GridSpec::centered(origin, 2, 0.05);
  bad.h = -1.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kInvalidArgument);
  const GridSpec grid = GridSpec::centered(Point{1.0, 2.0}, 3, 0.5);
  CHECK(grid.size() == 49);
  CHECK(grid.corner == Point{-0.5, 0.5});
  CHECK(grid.extent() == std::vector<double>{3.0, 3.0});
}

TEST_CASE("inversion is linear in the field") {
  const ContinuationConfig cfg;
  const std::vector<Point> pts{{0.0, 0.0}, {0.7, -0.4}};
  const InversionReport one = invert_hoelder(gaussian(2), Dimension(2, 1), pts, cfg, rule_for(2));
  const InversionReport three =
      invert_hoelder(scale(gaussian(2), -3.0), Dimension(2, 1), pts, cfg, rule_for(2));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(three.recovered[i] == doctest::Approx(-3.0 * one.recovered[i]).epsilon(1e-8));
    CHECK(three.reference[i] == doctest::Approx(-3.0 * one.reference[i]).epsilon(1e-15));
  }
}

TEST_CASE("Laplacian commutes with potentials") {
  const ContinuationConfig cfg;
  CHECK(laplacian_commutation_defect(gaussian(2), 2.5, Point{0.0, 0.0}, cfg, rule_for(2)) < 1e-4);
  CHECK(laplacian_commutation_defect(gaussian(3), 2.5, Point{1.0, 0.0, 0.0}, cfg, rule_for(3)) <
        1e-4);
  const double d1 =
      laplacian_commutation_defect(gaussian(2), cplx(2.6, 0.3), Point{0.4, 0.1}, cfg, rule_for(2));
  const double d5 = laplacian_commutation_defect(scale(gaussian(2), 5.0), cplx(2.6, 0.3),
                                                 Point{0.4, 0.1}, cfg, rule_for(2));
  CHECK(d1 < 1e-4);
  CHECK(d5 <= 5.0 * d1 + 1e-12);
}

TEST_CASE("reports serialize to CSV") {
  InversionReport r;
  r.route = "hoelder";
  r.dim = 2;
  r.points = {{0.0, 0.5}, {1.0, -1.0}};
  r.recovered = {1.0, 0.25};
  r.reference = {0.75, 0.125};
  r.abs_error = {0.25, 0.125};
  r.validate();
  CHECK(r.max_abs_error() == 0.25);
  std::ostringstream out;
  write_csv(r, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x0,x1,recovered,reference,abs_error");
  std::getline(in, line);
  CHECK(line == "0,0.5,1,0.75,0.25");
  r.abs_error[1] = 0.5;
  CHECK(kind_of([&] { r.validate(); }) == ErrorKind::kInvalidArgument);
  r.abs_error.pop_back();
  CHECK(kind_of([&] { r.validate(); }) == ErrorKind::kInvalidArgument);
}
