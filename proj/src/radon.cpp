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

#include "kplane/radon.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kplane/error.hpp"
#include "radial_cache.hpp"
#include "kplane/quadrature.hpp"
#include "kplane/riesz.hpp"

namespace kplane {

namespace {

constexpr double kPanel = 0.5;
constexpr int kGrading = 12;

double dot(PointView a, PointView b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// g(c + t e_1) - g(c) for the dual g of a radial field centered at c, as
// the dual integral of r -> M(r, c + t e_1) - M(r, c) with the difference
// taken sample by sample.
double dual_increment(const ScalarField& field, double t, const Dimension& dim,
                      const ContinuationConfig& cfg, const SphereRule& rule) {
  if (t == 0.0) return 0.0;
  const Point& c = field.geometry.center;
  Point y = c;
  y[0] += t;
  RadialProfile p = profile_of(field, y, rule, -1);
  p.evaluate = [field, y, c, rule](double r) {
    Point z = c;
    z[0] += std::abs(r);
    return mean_value(field, y, r, rule, field(z));
  };
  for (double s : field.geometry.break_radii) {
    if (s > 0.0) p.breakpoints.push_back(s);
  }
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()),
                      p.breakpoints.end());
  p.support_lo = 0.0;
  p.noise = 0.0;
  const int k = dim.k();
  return omega(k) * std::tgamma(static_cast<double>(k)) *
         xplus(p, static_cast<double>(k - 1), cfg).real();
}

}  // namespace

KPlane::KPlane(std::vector<Point> frame, Point offset)
    : frame_(std::move(frame)), offset_(std::move(offset)) {
  const std::size_t n = offset_.size();
  if (frame_.empty() || frame_.size() >= n) {
    fail(ErrorKind::kInvalidArgument, "k-plane needs 1 <= k < n frame vectors");
  }
  for (std::size_t i = 0; i < frame_.size(); ++i) {
    if (frame_[i].size() != n) {
      fail(ErrorKind::kInvalidArgument, "k-plane frame vector has wrong dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = dot(frame_[i], frame_[j]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-12) {
        fail(ErrorKind::kInvalidArgument, "k-plane frame is not orthonormal");
      }
    }
    if (std::abs(dot(frame_[i], offset_)) > 1e-12 * std::max(1.0, norm(offset_))) {
      fail(ErrorKind::kInvalidArgument, "k-plane offset is not orthogonal to the frame");
    }
  }
}

KPlane KPlane::through(std::vector<Point> frame, PointView x) {
  Point offset(x.begin(), x.end());
  for (const Point& e : frame) {
    const double c = dot(x, e);
    for (std::size_t i = 0; i < offset.size(); ++i) offset[i] -= c * e[i];
  }
  // one more pass removes the rounding left by the first
  for (const Point& e : frame) {
    const double c = dot(offset, e);
    for (std::size_t i = 0; i < offset.size(); ++i) offset[i] -= c * e[i];
  }
  return KPlane(std::move(frame), std::move(offset));
}

double forward(const ScalarField& field, const KPlane& plane, int resolution) {
  const int n = field.dim;
  const int k = plane.k();
  if (plane.n() != n) fail(ErrorKind::kInvalidArgument, "forward: plane dimension differs");
  if (resolution < 2) fail(ErrorKind::kInvalidArgument, "forward: resolution too small");
  if (!(field.decay_exponent > k)) {
    std::ostringstream os;
    os << "plane integral diverges: decay exponent " << field.decay_exponent
       << " is not above k = " << k;
    fail(ErrorKind::kDivergence, os.str());
  }
  const FieldGeometry& geo = field.geometry;
  const Point& off = plane.offset();
  const Point center = geo.center.empty() ? off : geo.center;
  // foot of the center on the plane
  Point foot = off;
  for (const Point& e : plane.frame()) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += (center[i] - off[i]) * e[i];
    for (int i = 0; i < n; ++i) foot[i] += c * e[i];
  }
  const double dperp = distance(center, foot);
  double width = kInf;
  if (!geo.center.empty() && geo.support_radius < kInf) {
    if (dperp >= geo.support_radius) return 0.0;
    width = std::sqrt(geo.support_radius * geo.support_radius - dperp * dperp);
  }
  std::vector<double> kinks;
  if (!geo.center.empty()) {
    for (double s : geo.break_radii) {
      if (s > dperp) {
        const double r = std::sqrt(s * s - dperp * dperp);
        if (r < width) kinks.push_back(r);
      }
    }
  }
  std::sort(kinks.begin(), kinks.end());

  const SphereRule directions(k, std::max(8, resolution));
  Point y(n);
  auto shell = [&](double r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < directions.size(); ++j) {
      const PointView w = directions.node(j);
      for (int i = 0; i < n; ++i) {
        double v = foot[i];
        for (int b = 0; b < k; ++b) v += r * w[b] * plane.frame()[b][i];
        y[i] = v;
      }
      acc += directions.weight(j) * field(y);
    }
    return acc * std::pow(r, k - 1);
  };

  auto panels = [&](double lo, double hi, bool kink_lo, bool kink_hi) {
    const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / kPanel)));
    const double step = (hi - lo) / count;
    double acc = 0.0;
    for (int p = 0; p < count; ++p) {
      acc += integrate_graded(shell, lo + p * step, lo + (p + 1) * step,
                              kink_lo && p == 0, kink_hi && p == count - 1, resolution,
                              kGrading);
    }
    return acc;
  };

  double radial_end = width;
  const double a = field.decay_exponent;
  if (width == kInf) {
    radial_end = 4.0;
    for (double r : kinks) radial_end = std::max(radial_end, 2.0 * r);
  }
  std::vector<double> pts = {0.0};
  for (double r : kinks) {
    if (r > 0.0 && r < radial_end) pts.push_back(r);
  }
  pts.push_back(radial_end);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const bool lo_kink = i > 0 || (dperp == 0.0 && std::count(geo.break_radii.begin(),
                                                               geo.break_radii.end(), 0.0) > 0);
    const bool hi_kink = i + 2 < pts.size() || width < kInf;
    total += panels(pts[i], pts[i + 1], lo_kink, hi_kink);
  }
  if (width == kInf) {
    const double r0 = radial_end;
    if (a < kInf) {
      // r = r0 / w maps (r0, inf) to (0, 1]; the weight w^(a-k-1) is exact
      const double expo = a - k - 1.0;
      const QuadRule rule = gauss_jacobi(2 * resolution, 0.0, expo);
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double w = 0.5 * (1.0 + rule.nodes[i]);
        acc += rule.weights[i] * shell(r0 / w) * r0 * std::pow(w, -2.0 - expo);
      }
      total += acc * std::pow(0.5, expo + 1.0);
    } else {
      double lo = r0;
      int quiet = 0;
      while (lo < 1e12) {
        const double piece = panels(lo, 2.0 * lo, false, false);
        total += piece;
        if (std::abs(piece) <= 1e-16 * std::abs(total)) {
          if (++quiet >= 2) break;
        } else {
          quiet = 0;
        }
        lo *= 2.0;
      }
    }
  }
  return total;
}

PlaneIntegralOracle forward_oracle(const ScalarField& field, int resolution) {
  PlaneIntegralOracle o;
  o.integrate = [field, resolution](const KPlane& plane) {
    return forward(field, plane, resolution);
  };
  o.provenance = PlaneIntegralOracle::Provenance::kSynthesized;
  return o;
}

double dual_composite(const ScalarField& field, PointView x, const Dimension& dim,
                      const ContinuationConfig& cfg, const SphereRule& rule) {
  if (field.dim != dim.n() || static_cast<int>(x.size()) != dim.n()) {
    fail(ErrorKind::kInvalidArgument, "dual transform: dimension mismatch");
  }
  const int k = dim.k();
  if (!(field.decay_exponent > k)) {
    std::ostringstream os;
    os << "dual transform needs decay above k = " << k << ", field has "
       << field.decay_exponent;
    fail(ErrorKind::kDivergence, os.str());
  }
  const RadialProfile p = profile_of(field, x, rule, -1);
  return omega(k) * std::tgamma(static_cast<double>(k)) *
         xplus(p, static_cast<double>(k - 1), cfg).real();
}

ScalarField dual_field(const ScalarField& field, const Dimension& dim,
                       const ContinuationConfig& cfg, const SphereRule& rule) {
  if (field.dim != dim.n() || rule.dim() != dim.n()) {
    fail(ErrorKind::kInvalidArgument, "dual field: dimension mismatch");
  }
  cfg.validate();
  ScalarField out;
  out.name = "dual(" + field.name + ")";
  out.dim = field.dim;
  out.evaluate = [field, dim, cfg, rule](PointView y) {
    return dual_composite(field, y, dim, cfg, rule);
  };
  const double k = dim.k();
  out.decay_exponent = potential_decay(field, k);
  const LocalClass global = potential_class(
      LocalClass{field.smoothness.order, field.smoothness.hoelder.value_or(0.0)}, k);
  out.smoothness.order = global.order;
  if (global.order != kSmooth) out.smoothness.hoelder = global.hoelder;
  out.smoothness.exceptional_set = field.smoothness.exceptional_set;
  out.local_class_at = [field, k](PointView y) {
    return potential_class(field.local_class(y), k);
  };
  out.geometry.center = field.geometry.center;
  out.geometry.break_radii = field.geometry.break_radii;
  out.geometry.radial = field.geometry.radial;
  out.abs_accuracy = 10.0 * cfg.tolerance * dual_riesz_constant(dim) + field.abs_accuracy;
  if (out.geometry.radial && !out.geometry.center.empty()) {
    out.radial_increment = [field, dim, cfg, rule](double t) {
      return dual_increment(field, t, dim, cfg, rule);
    };
    out.evaluate = cached_radial_evaluator(out);
  }
  return out;
}

std::vector<std::vector<Point>> sample_frames(const Dimension& dim, int count,
                                              std::uint64_t seed) {
  if (count < 1) fail(ErrorKind::kInvalidArgument, "frame sample count must be positive");
  const int n = dim.n();
  const int k = dim.k();
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Point>> frames;
  frames.reserve(count);
  if (n == 2 && k == 1) {
    std::uniform_real_distribution<double> phase(0.0, kPi / count);
    const double phi0 = phase(rng);
    for (int j = 0; j < count; ++j) {
      const double phi = phi0 + j * kPi / count;
      frames.push_back({Point{std::cos(phi), std::sin(phi)}});
    }
    return frames;
  }
  std::normal_distribution<double> normal;
  while (static_cast<int>(frames.size()) < count) {
    std::vector<Point> frame;
    bool ok = true;
    for (int b = 0; b < k && ok; ++b) {
      Point v(n);
      for (double& c : v) c = normal(rng);
      for (int pass = 0; pass < 2; ++pass) {
        for (const Point& e : frame) {
          const double c = dot(v, e);
          for (int i = 0; i < n; ++i) v[i] -= c * e[i];
        }
      }
      const double len = norm(v);
      if (len < 1e-8) {
        ok = false;
        break;
      }
      for (double& c : v) c /= len;
      frame.push_back(std::move(v));
    }
    if (ok) frames.push_back(std::move(frame));
  }
  return frames;
}

double dual_sampled(const PlaneIntegralOracle& oracle, PointView x, const Dimension& dim,
                    const std::vector<std::vector<Point>>& frames) {
  if (frames.empty()) fail(ErrorKind::kInvalidArgument, "dual_sampled: no frames");
  if (static_cast<int>(x.size()) != dim.n()) {
    fail(ErrorKind::kInvalidArgument, "dual_sampled: point dimension differs");
  }
  double acc = 0.0;
  for (const auto& frame : frames) {
    if (static_cast<int>(frame.size()) != dim.k()) {
      fail(ErrorKind::kInvalidArgument, "dual_sampled: frame has wrong plane dimension");
    }
    acc += oracle(KPlane::through(frame, x));
  }
  return acc / static_cast<double>(frames.size());
}

double dual_riesz_constant(const Dimension& dim) {
  const double k = dim.k();
  const double n = dim.n();
  return std::pow(4.0 * kPi, 0.5 * k) * std::tgamma(0.5 * n) / std::tgamma(0.5 * (n - k));
}

double dual_riesz_defect(const ScalarField& field, PointView x, const Dimension& dim,
                         const ContinuationConfig& cfg, const SphereRule& rule) {
  const double lhs = dual_composite(field, x, dim, cfg, rule);
  const double rhs =
      dual_riesz_constant(dim) * riesz(field, static_cast<double>(dim.k()), x, cfg, rule).real();
  return std::abs(lhs - rhs);
}

std::vector<SinogramRow> sinogram(const ScalarField& field, int angles, int offsets,
                                  double half_width, int resolution) {
  if (field.dim != 2) fail(ErrorKind::kInvalidArgument, "sinogram: planar fields only");
  if (angles < 1 || offsets < 1 || !(half_width > 0.0)) {
    fail(ErrorKind::kInvalidArgument, "sinogram: grid must be nonempty");
  }
  std::vector<SinogramRow> rows;
  rows.reserve(static_cast<std::size_t>(angles) * offsets);
  for (int i = 0; i < angles; ++i) {
    const double phi = i * kPi / angles;
    const Point dir{std::cos(phi), std::sin(phi)};
    const Point normal{-std::sin(phi), std::cos(phi)};
    for (int j = 0; j < offsets; ++j) {
      const double s = -half_width + (j + 0.5) * 2.0 * half_width / offsets;
      const KPlane line({dir}, Point{s * normal[0], s * normal[1]});
      rows.push_back({phi, s, forward(field, line, resolution)});
    }
  }
  return rows;
}

}  // namespace kplane
