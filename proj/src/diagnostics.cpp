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

#include <algorithm>
#include <cmath>
#include <random>

#include "kplane/error.hpp"
#include "kplane/field.hpp"

namespace kplane {

namespace {

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Point> random_directions(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Point> dirs;
  dirs.reserve(count);
  while (static_cast<int>(dirs.size()) < count) {
    Point u(dim);
    for (double& v : u) v = normal(rng);
    const double len = norm(u);
    if (len < 1e-12) continue;
    for (double& v : u) v /= len;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

}  // namespace

double estimate_decay_exponent(const ScalarField& field, PointView direction,
                               std::span<const double> radii) {
  if (radii.size() < 4) {
    fail(ErrorKind::kInvalidArgument, "decay estimate needs at least 4 radii");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 1.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      fail(ErrorKind::kInvalidArgument,
           "decay estimate needs increasing radii greater than 1");
    }
  }
  const double len = norm(direction);
  std::vector<double> xs;
  std::vector<double> ys;
  Point p(direction.size());
  for (double r : radii) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r * direction[i] / len;
    const double v = std::abs(field(p));
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::kDegenerate,
           "field vanishes or is not finite on the sampled tail");
    }
    xs.push_back(std::log(r));
    ys.push_back(std::log(v));
  }
  return -least_squares_slope(xs, ys);
}

std::vector<double> local_oscillations(const ScalarField& field, PointView x,
                                       std::span<const double> probe_scales,
                                       std::uint64_t seed) {
  const auto dirs = random_directions(field.dim, 32, seed);
  const double center = field(x);
  std::vector<double> osc;
  Point y(x.size());
  for (double s : probe_scales) {
    double worst = 0.0;
    for (const Point& u : dirs) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + s * u[i];
      worst = std::max(worst, std::abs(field(y) - center));
    }
    osc.push_back(worst);
  }
  return osc;
}

double estimate_hoelder_index(const ScalarField& field, PointView x,
                              std::span<const double> probe_scales,
                              std::uint64_t seed) {
  if (probe_scales.size() < 4) {
    fail(ErrorKind::kInvalidArgument, "Hoelder estimate needs at least 4 scales");
  }
  for (std::size_t i = 0; i < probe_scales.size(); ++i) {
    const double s = probe_scales[i];
    if (!(s > 0.0 && s < 1.0) || (i > 0 && !(s < probe_scales[i - 1]))) {
      fail(ErrorKind::kInvalidArgument,
           "probe scales must decrease inside (0, 1)");
    }
  }
  const auto osc = local_oscillations(field, x, probe_scales, seed);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < osc.size(); ++i) {
    if (osc[i] > 0.0) {
      xs.push_back(std::log(probe_scales[i]));
      ys.push_back(std::log(osc[i]));
    }
  }
  // locally constant: at least as good as Lipschitz
  if (xs.size() < 2) return 1.0;
  const double slope = least_squares_slope(xs, ys);
  return std::clamp(slope, 1e-12, 1.0);
}

}  // namespace kplane
