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

#include "kplane/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "kplane/error.hpp"
#include "kplane/quadrature.hpp"
#include "kplane/specfun.hpp"

namespace kplane {

namespace {

constexpr int kZonalOrder = 12;
constexpr int kZonalGrading = 10;
// Longest arc (in field units) covered by one zonal panel.
constexpr double kArcPanel = 1.0;
constexpr int kMaxZonalPanels = 256;

}  // namespace

SphereRule::SphereRule(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1) fail(ErrorKind::kInvalidArgument, "sphere dimension must be >= 1");
  if (order < 1) fail(ErrorKind::kInvalidArgument, "sphere rule order must be >= 1");
  if (dim == 1) {
    nodes_ = {-1.0, 1.0};
    weights_ = {1.0, 1.0};
    return;
  }
  if (dim == 2) {
    const int count = 2 * order;
    nodes_.reserve(2 * count);
    for (int j = 0; j < count; ++j) {
      const double phi = (j + 0.5) * kPi / order;
      nodes_.push_back(std::cos(phi));
      nodes_.push_back(std::sin(phi));
      weights_.push_back(2.0 * kPi / count);
    }
    return;
  }
  inner_ = std::make_shared<const SphereRule>(dim - 1, order);
  const double expo = 0.5 * (dim - 3);
  QuadRule polar = gauss_jacobi(order, expo, expo);
  // enforce exact antipodal symmetry of the polar nodes
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double z = 0.5 * (polar.nodes[j] - polar.nodes[i]);
    const double w = 0.5 * (polar.weights[i] + polar.weights[j]);
    polar.nodes[i] = -z;
    polar.nodes[j] = z;
    polar.weights[i] = polar.weights[j] = w;
  }
  if (order % 2 == 1) polar.nodes[order / 2] = 0.0;
  for (int i = 0; i < order; ++i) {
    const double z = polar.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (std::size_t j = 0; j < inner_->size(); ++j) {
      nodes_.push_back(z);
      const PointView eta = inner_->node(j);
      for (double e : eta) nodes_.push_back(s * e);
      weights_.push_back(polar.weights[i] * inner_->weight(j));
    }
  }
}

int default_sphere_order(int dim) noexcept { return dim <= 2 ? 32 : 12; }

namespace {

// Orthonormal basis of the complement of the unit vector u, as n-1 vectors.
std::vector<Point> complement_basis(const Point& u) {
  const int n = static_cast<int>(u.size());
  Point v(u);
  const double sign = u[0] > 0.0 ? 1.0 : -1.0;
  // v = e0 + sign*u, reflection maps e0 to -sign*u
  for (double& x : v) x *= sign;
  v[0] += 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;
  std::vector<Point> basis;
  for (int j = 1; j < n; ++j) {
    Point col(n, 0.0);
    col[j] = 1.0;
    for (int i = 0; i < n; ++i) col[i] -= 2.0 * v[i] * v[j] / vv;
    basis.push_back(std::move(col));
  }
  return basis;
}

struct ThetaBreak {
  double theta;
  bool graded;
};

double zonal_mean(const ScalarField& field, PointView center, double r,
                  const Point& axis, std::vector<ThetaBreak> breaks,
                  bool grade_pole, const SphereRule& rule, double d, double baseline) {
  const int n = field.dim;
  const auto basis = complement_basis(axis);
  std::vector<Point> offsets;
  std::vector<double> az_weights;
  if (field.geometry.radial) {
    // every azimuth sees the same distance to the center
    offsets.push_back(basis[0]);
    az_weights.push_back(omega(n - 1));
  } else {
    const SphereRule azimuthal_rule = rule.azimuthal()
                                          ? *rule.azimuthal()
                                          : SphereRule(n - 1, rule.order());
    for (std::size_t j = 0; j < azimuthal_rule.size(); ++j) {
      Point p(n, 0.0);
      const PointView eta = azimuthal_rule.node(j);
      for (int b = 0; b < n - 1; ++b) {
        for (int i = 0; i < n; ++i) p[i] += eta[b] * basis[b][i];
      }
      offsets.push_back(std::move(p));
      az_weights.push_back(azimuthal_rule.weight(j));
    }
  }

  Point y(n);
  auto integrand = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double acc = 0.0;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      for (int i = 0; i < n; ++i) {
        y[i] = center[i] + r * (c * axis[i] + s * offsets[j][i]);
      }
      acc += az_weights[j] * (field(y) - baseline);
    }
    return acc * std::pow(s, n - 2);
  };

  breaks.push_back({0.0, grade_pole});
  breaks.push_back({kPi, false});
  std::sort(breaks.begin(), breaks.end(),
            [](const ThetaBreak& a, const ThetaBreak& b) { return a.theta < b.theta; });
  // coincident breaks keep the stronger grading
  std::vector<ThetaBreak> merged;
  for (const ThetaBreak& b : breaks) {
    if (!merged.empty() && merged.back().theta == b.theta) {
      merged.back().graded = merged.back().graded || b.graded;
    } else {
      merged.push_back(b);
    }
  }
  breaks = std::move(merged);
  const double support = field.geometry.support_radius;
  double total = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b].theta;
    const double hi = breaks[b + 1].theta;
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double dist_mid = std::sqrt(std::max(0.0, r * r + d * d - 2.0 * r * d * std::cos(mid)));
    if (dist_mid > support) {
      if (baseline != 0.0) {
        // outside the support every sample is -baseline
        auto zone = [n](double th) { return std::pow(std::sin(th), n - 2); };
        total -= baseline * omega(n - 1) * integrate_gl(zone, lo, hi, kZonalOrder);
      }
      continue;
    }
    // far from the center the field varies on the scale of its distance
    const double reach = std::min(r, std::max(d, 1.0));
    const int panels = std::clamp(static_cast<int>(std::ceil(reach * (hi - lo) / kArcPanel)),
                                  1, kMaxZonalPanels);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const bool g_lo = p == 0 && breaks[b].graded;
      const bool g_hi = p == panels - 1 && breaks[b + 1].graded;
      total += integrate_graded(integrand, lo + p * width, lo + (p + 1) * width,
                                g_lo, g_hi, kZonalOrder, kZonalGrading);
    }
  }
  return total / omega(n);
}

}  // namespace

double mean_value(const ScalarField& field, PointView center, double r,
                  const SphereRule& rule, double baseline) {
  if (static_cast<int>(center.size()) != field.dim || rule.dim() != field.dim) {
    fail(ErrorKind::kInvalidArgument, "mean_value: dimension mismatch");
  }
  r = std::abs(r);
  if (r == 0.0) return field(center) - baseline;
  const int n = field.dim;
  const FieldGeometry& geo = field.geometry;
  if (!geo.center.empty()) {
    const double d = distance(center, geo.center);
    const double support = geo.support_radius;
    if (support < kInf && (r >= d + support || r <= d - support)) return -baseline;
    if (d == 0.0 && geo.radial) {
      Point y(center.begin(), center.end());
      y[0] += r;
      return field(y) - baseline;
    }
    if (d > 0.0) {
      std::vector<ThetaBreak> breaks;
      bool grade_pole = false;
      auto crossing = [&](double s) -> std::optional<double> {
        const double c = (r * r + d * d - s * s) / (2.0 * r * d);
        if (c > -1.0 && c < 1.0) return std::acos(c);
        return std::nullopt;
      };
      if (support < kInf) {
        if (auto th = crossing(support)) breaks.push_back({*th, false});
      }
      for (double s : geo.break_radii) {
        if (s == 0.0) {
          if (std::abs(r - d) < 0.1 * std::max(r, d)) grade_pole = true;
        } else if (auto th = crossing(s)) {
          breaks.push_back({*th, true});
        }
      }
      if (r > 1.0) grade_pole = true;
      if (!breaks.empty() || grade_pole) {
        Point axis(n);
        for (int i = 0; i < n; ++i) axis[i] = (geo.center[i] - center[i]) / d;
        return zonal_mean(field, center, r, axis, std::move(breaks), grade_pole,
                          rule, d, baseline);
      }
    }
  }
  Point y(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const PointView w = rule.node(j);
    for (int i = 0; i < n; ++i) y[i] = center[i] + r * w[i];
    acc += rule.weight(j) * (field(y) - baseline);
  }
  return acc / omega(n);
}

std::vector<double> even_taylor_coefficients(
    const std::function<double(double)>& profile, int order, double step) {
  std::vector<double> c;
  if (order < 0) return c;
  const double c0 = profile(0.0);
  c.push_back(c0);
  if (order >= 1) c.push_back(0.0);
  constexpr int kLevels = 5;
  double scale = std::abs(c0);
  for (int j = 1; 2 * j <= order; ++j) {
    const int m = 2 * j;
    // binomial(m, i)
    std::vector<double> binom(m + 1, 1.0);
    for (int i = 1; i <= m; ++i) binom[i] = binom[i - 1] * (m - i + 1) / i;
    double table[kLevels][kLevels];
    double best = 0.0;
    double best_err = kInf;
    for (int k = 0; k < kLevels; ++k) {
      const double h = step / std::pow(2.0, k);
      double acc = 0.0;
      for (int i = 0; i <= m; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double v = profile(std::abs(j - i) * h);
        scale = std::max(scale, std::abs(v));
        acc += sign * binom[i] * v;
      }
      table[k][0] = acc / std::pow(h, m);
      for (int q = 1; q <= k; ++q) {
        const double f = std::pow(4.0, q) - 1.0;
        table[k][q] = table[k][q - 1] + (table[k][q - 1] - table[k - 1][q - 1]) / f;
      }
      if (k > 0) {
        const double err = std::abs(table[k][k] - table[k - 1][k - 1]);
        if (err < best_err) {
          best_err = err;
          best = table[k][k];
        }
      }
    }
    const double fact = std::tgamma(m + 1.0);
    const double coeff = best / fact;
    const double err = best_err / fact;
    if (!(err <= 1e-5 * std::max(std::abs(coeff), scale))) break;
    c.push_back(coeff);
    if (m + 1 <= order) c.push_back(0.0);
  }
  return c;
}

RadialProfile profile_of(const ScalarField& field, PointView center,
                         const SphereRule& rule, int taylor_order,
                         int required_order) {
  if (static_cast<int>(center.size()) != field.dim || rule.dim() != field.dim) {
    fail(ErrorKind::kInvalidArgument, "profile_of: dimension mismatch");
  }
  if (required_order < 0) required_order = taylor_order;
  RadialProfile p;
  Point c(center.begin(), center.end());
  if (field.exact_spherical_mean) {
    p.evaluate = [mean = *field.exact_spherical_mean, c](double t) {
      return mean(c, std::abs(t));
    };
  } else {
    p.evaluate = [field, c, rule](double t) { return mean_value(field, c, t, rule); };
  }
  p.decay_exponent = field.decay_exponent;
  p.even = true;
  p.local_class = field.local_class(c);
  p.noise = field.abs_accuracy;
  if (field.radial_increment && field.geometry.radial && c == field.geometry.center) {
    p.increment = [inc = *field.radial_increment](double t) { return inc(std::abs(t)); };
  }

  const FieldGeometry& geo = field.geometry;
  if (!geo.center.empty()) {
    const double d = distance(c, geo.center);
    p.reach = d;
    if (d > 1.0) p.breakpoints.push_back(d);
    for (double s : geo.break_radii) {
      if (s == 0.0) {
        if (d > 0.0) p.breakpoints.push_back(d);
      } else if (d > 0.0) {
        if (std::abs(d - s) > 0.0) p.breakpoints.push_back(std::abs(d - s));
        p.breakpoints.push_back(d + s);
      } else {
        p.breakpoints.push_back(s);
      }
    }
    if (geo.support_radius < kInf) {
      p.support_lo = std::max(0.0, d - geo.support_radius);
      p.support_hi = d + geo.support_radius;
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()),
                        p.breakpoints.end());
  }

  if (taylor_order < 0) return p;
  const int cap = p.local_class.order == kSmooth
                      ? taylor_order
                      : std::min(taylor_order, p.local_class.order);
  if (field.radial_taylor_at) {
    p.taylor = (*field.radial_taylor_at)(c, cap);
  } else if (p.support_lo > 0.0) {
    // the sphere cannot reach the support near t = 0
    p.taylor.assign(cap + 1, 0.0);
  } else {
    double step = 0.1;
    for (double b : p.breakpoints) {
      if (b > 0.0) step = std::min(step, 0.3 * b);
    }
    step = std::max(step, 1e-6);
    p.taylor = even_taylor_coefficients(p.evaluate, cap, step);
  }
  if (static_cast<int>(p.taylor.size()) < required_order + 1) {
    std::ostringstream os;
    os << "Taylor coefficients of the spherical-mean profile available to order "
       << static_cast<int>(p.taylor.size()) - 1 << ", required " << required_order;
    fail(ErrorKind::kTaylorFailure, os.str());
  }
  return p;
}

}  // namespace kplane
