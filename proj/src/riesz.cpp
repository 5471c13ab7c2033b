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

#include "kplane/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kplane/error.hpp"
#include "radial_cache.hpp"
#include "kplane/quadrature.hpp"

namespace kplane {

namespace {

bool is_integer(double v) { return v == std::nearbyint(v); }

void check_request(const ScalarField& field, cplx alpha, PointView x,
                   const SphereRule& rule) {
  if (static_cast<int>(x.size()) != field.dim || rule.dim() != field.dim) {
    fail(ErrorKind::kInvalidArgument, "riesz: field, point and sphere rule dimensions differ");
  }
  if (!(alpha.real() < field.decay_exponent)) {
    std::ostringstream os;
    os << "Re alpha = " << alpha.real() << " is not below the decay exponent "
       << field.decay_exponent;
    fail(ErrorKind::kStripViolation, os.str());
  }
}

// Profile with the Taylor data needed for every order in `alphas`.
RadialProfile profile_for(const ScalarField& field, PointView x,
                          const std::vector<cplx>& alphas,
                          const ContinuationConfig& cfg, const SphereRule& rule) {
  const LocalClass local = field.local_class(x);
  int target = -1;
  int required = -1;
  for (cplx alpha : alphas) {
    const double re = alpha.real();
    if (alpha.imag() == 0.0 && re <= 0.0 && is_integer(re) && is_integer(re / 2.0)) {
      minimal_taylor_order(re - 1.0, local);  // strip check
      target = std::max(target, static_cast<int>(-re));
      required = std::max(required, static_cast<int>(-re));
    } else if (re - 1.0 <= -1.0) {
      const TaylorPlan plan = plan_taylor_order(re - 1.0, local, cfg);
      target = std::max(target, plan.target);
      required = std::max(required, plan.required);
    }
  }
  return profile_of(field, x, rule, target, required);
}

cplx riesz_on_profile(const RadialProfile& p, int n, cplx alpha,
                      const ContinuationConfig& cfg) {
  const double re = alpha.real();
  const cplx beta = alpha - 1.0;
  if (alpha.imag() == 0.0 && re <= 0.0 && is_integer(re)) {
    const int m = static_cast<int>(-re);
    if (m % 2 == 0) {
      // pole of H_n against the resonant B term: a local value
      if (static_cast<int>(p.taylor.size()) < m + 1) {
        fail(ErrorKind::kMissingCoefficient,
             "even negative order needs the Taylor coefficient of order " + std::to_string(m));
      }
      return omega(n) * p.taylor[m] / h_n_residue(n, m / 2);
    }
    const TaylorPlan plan = plan_taylor_order(beta.real(), p.local_class, cfg);
    const int l = std::min(plan.target, static_cast<int>(p.taylor.size()) - 1);
    if (l < plan.required) {
      fail(ErrorKind::kMissingCoefficient, "profile lacks Taylor data for the order");
    }
    if (l >= m && p.taylor[m] != 0.0) {
      fail(ErrorKind::kPole, "odd resonant Taylor coefficient is nonzero (profile not even)");
    }
    return omega(n) * reciprocal_h_n(n, alpha) *
           continued_integral(p, beta, l, cfg, m).value;
  }
  int l = -1;
  if (beta.real() <= -1.0) {
    const TaylorPlan plan = plan_taylor_order(beta.real(), p.local_class, cfg);
    l = std::min(plan.target, static_cast<int>(p.taylor.size()) - 1);
    if (l < plan.required) {
      fail(ErrorKind::kMissingCoefficient, "profile lacks Taylor data for the order");
    }
  }
  return omega(n) * reciprocal_h_n(n, alpha) * continued_integral(p, beta, l, cfg).value;
}

}  // namespace

cplx riesz(const ScalarField& field, cplx alpha, PointView x,
           const ContinuationConfig& cfg, const SphereRule& rule) {
  cfg.validate();
  check_request(field, alpha, x, rule);
  // pole check before any quadrature
  if (alpha.imag() == 0.0 && alpha.real() >= field.dim &&
      is_integer((alpha.real() - field.dim) / 2.0)) {
    std::ostringstream os;
    os << "I^alpha has a pole at alpha = " << alpha.real() << " (n + 2N0)";
    fail(ErrorKind::kPole, os.str());
  }
  const RadialProfile p = profile_for(field, x, {alpha}, cfg, rule);
  return riesz_on_profile(p, field.dim, alpha, cfg);
}

cplx riesz(const RieszRequest& req) {
  const SphereRule rule = req.rule ? *req.rule
                                   : SphereRule(req.field.dim, default_sphere_order(req.field.dim));
  return riesz(req.field, req.alpha, req.x, req.cfg, rule);
}

double potential_decay(const ScalarField& field, double alpha) {
  const double n = field.dim;
  const double a = field.decay_exponent;
  double b = std::min(a, n);
  if (a == n) b = n * (1.0 - 1e-9);
  return b - alpha;
}

LocalClass potential_class(const LocalClass& base, double alpha) {
  if (base.order == kSmooth) return base;
  const int gain = static_cast<int>(std::floor(alpha));
  LocalClass out;
  if (base.is_hoelder()) {
    out.order = base.order + gain;
    out.hoelder = base.hoelder;
  } else {
    out.order = base.order + gain - 1;
    out.hoelder = kHoelderAll;
  }
  if (out.order < 0) out = LocalClass{0, 0.0};
  return out;
}

ScalarField riesz_field(const ScalarField& field, double alpha,
                        const ContinuationConfig& cfg, const SphereRule& rule) {
  cfg.validate();
  if (rule.dim() != field.dim) {
    fail(ErrorKind::kInvalidArgument, "riesz_field: sphere rule dimension differs");
  }
  ScalarField out;
  std::ostringstream name;
  name << "I^" << alpha << "(" << field.name << ")";
  out.name = name.str();
  out.dim = field.dim;
  out.evaluate = [field, alpha, cfg, rule](PointView y) {
    return riesz(field, alpha, y, cfg, rule).real();
  };
  out.decay_exponent = potential_decay(field, alpha);
  const LocalClass global =
      potential_class(LocalClass{field.smoothness.order, field.smoothness.hoelder.value_or(0.0)},
                      alpha);
  out.smoothness.order = global.order;
  if (global.order != kSmooth) out.smoothness.hoelder = global.hoelder;
  out.smoothness.exceptional_set = field.smoothness.exceptional_set;
  out.local_class_at = [field, alpha](PointView y) {
    return potential_class(field.local_class(y), alpha);
  };
  out.geometry.center = field.geometry.center;
  out.geometry.break_radii = field.geometry.break_radii;
  out.geometry.radial = field.geometry.radial;
  out.abs_accuracy = 10.0 * cfg.tolerance + field.abs_accuracy;
  if (out.geometry.radial && !out.geometry.center.empty()) {
    out.evaluate = cached_radial_evaluator(out);
  }
  return out;
}

LimitTrace riesz_right_limit(const ScalarField& field, double target,
                             const std::vector<double>& s_sequence, PointView x,
                             const ContinuationConfig& cfg, const SphereRule& rule) {
  cfg.validate();
  if (s_sequence.empty()) fail(ErrorKind::kInvalidArgument, "limit: empty s sequence");
  for (std::size_t i = 0; i < s_sequence.size(); ++i) {
    const double s = s_sequence[i];
    if (!(s > target && s < target + 1.0) || (i > 0 && !(s < s_sequence[i - 1]))) {
      std::ostringstream os;
      os << "limit: s sequence must decrease inside (" << target << ", " << target + 1.0 << ")";
      fail(ErrorKind::kInvalidArgument, os.str());
    }
  }
  std::vector<cplx> orders(s_sequence.begin(), s_sequence.end());
  for (cplx s : orders) check_request(field, s, x, rule);
  const RadialProfile p = profile_for(field, x, orders, cfg, rule);
  std::vector<cplx> values;
  for (double s : s_sequence) values.push_back(riesz_on_profile(p, field.dim, s, cfg));
  LimitTrace trace = extrapolate_limit(s_sequence, std::move(values), target);
  return trace;
}

double semigroup_defect(const ScalarField& field, double alpha, double beta,
                        PointView x, const ContinuationConfig& cfg,
                        const SphereRule& rule) {
  const double b = std::min(field.decay_exponent, static_cast<double>(field.dim));
  if (!(alpha > 0.0 && beta > 0.0 && alpha + beta < b)) {
    std::ostringstream os;
    os << "semigroup law needs alpha > 0, beta > 0 and alpha + beta < min(a, n) = " << b;
    fail(ErrorKind::kStripViolation, os.str());
  }
  const ScalarField inner = riesz_field(field, beta, cfg, rule);
  const cplx composed = riesz(inner, alpha, x, cfg, rule);
  const cplx direct = riesz(field, alpha + beta, x, cfg, rule);
  return std::abs(composed - direct);
}

namespace {

// int_0^L r^gamma g(r) dr with a Gauss-Jacobi rule carrying the power.
template <class G>
double jacobi_power(double gamma_exp, double L, int order, G&& g) {
  const QuadRule rule = gauss_jacobi(order, 0.0, gamma_exp);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] * g(0.5 * L * (1.0 + rule.nodes[i]));
  }
  return acc * std::pow(0.5 * L, gamma_exp + 1.0);
}

// Periodic trapezoid over the full circle.
template <class G>
double circle(int nodes, G&& g) {
  double acc = 0.0;
  for (int j = 0; j < nodes; ++j) acc += g((j + 0.5) * 2.0 * kPi / nodes);
  return acc * 2.0 * kPi / nodes;
}

double beta_integral_1d(double a, double b, int q) {
  double acc = 0.0;
  acc += jacobi_power(a - 1.0, 0.5, q, [&](double v) { return std::pow(1.0 - v, b - 1.0); });
  acc += jacobi_power(b - 1.0, 0.5, q, [&](double w) { return std::pow(1.0 - w, a - 1.0); });
  acc += jacobi_power(b - 1.0, 1.0, q, [&](double w) { return std::pow(1.0 + w, a - 1.0); });
  acc += jacobi_power(-a - b, 1.0, q, [&](double s) { return std::pow(1.0 + s, a - 1.0); });
  acc += jacobi_power(a - 1.0, 1.0, q, [&](double w) { return std::pow(1.0 + w, b - 1.0); });
  acc += jacobi_power(-a - b, 1.0, q, [&](double s) { return std::pow(1.0 + s, b - 1.0); });
  return acc;
}

double beta_integral_2d(double a, double b, int q) {
  const int ring = 8 * q;
  constexpr double kDisk = 0.4;
  // |e - v| for v = r (cos t, sin t)
  auto dist_e = [](double r, double t) {
    return std::sqrt(std::max(0.0, 1.0 - 2.0 * r * std::cos(t) + r * r));
  };
  double acc = 0.0;
  // disk around 0: weight r^(a-1)
  acc += jacobi_power(a - 1.0, kDisk, q, [&](double r) {
    return circle(ring, [&](double t) { return std::pow(dist_e(r, t), b - 2.0); });
  });
  // disk around e: weight rho^(b-1)
  acc += jacobi_power(b - 1.0, kDisk, q, [&](double r) {
    return circle(ring, [&](double t) { return std::pow(dist_e(r, t + kPi), a - 2.0); });
  });
  auto full_ring = [&](double r) {
    return std::pow(r, a - 1.0) *
           circle(ring, [&](double t) { return std::pow(dist_e(r, t), b - 2.0); });
  };
  acc += integrate_gl(full_ring, kDisk, 1.0 - kDisk, q);
  acc += integrate_panels(full_ring, 1.0 + kDisk, 4.0, 4, q);
  // annulus 0.6 < r < 1.4 minus the disk around e, r = 1 - 0.4 cos(phi)
  acc += integrate_gl(
      [&](double phi) {
        const double r = 1.0 - kDisk * std::cos(phi);
        const double c = std::clamp((r * r + 1.0 - kDisk * kDisk) / (2.0 * r), -1.0, 1.0);
        const double theta0 = std::acos(c);
        const double arc = integrate_panels(
            [&](double t) { return std::pow(dist_e(r, t), b - 2.0); }, theta0, kPi, 2, q);
        return 2.0 * arc * std::pow(r, a - 1.0) * kDisk * std::sin(phi);
      },
      0.0, kPi, 2 * q);
  // exterior r > 4 with r = 4 / w
  acc += std::pow(4.0, a + b - 2.0) *
         jacobi_power(1.0 - a - b, 1.0, q, [&](double w) {
           return circle(ring, [&](double t) {
             // |omega - (w/4) e|
             return std::pow(dist_e(0.25 * w, t), b - 2.0);
           });
         });
  return acc;
}

}  // namespace

BetaIdentity beta_identity_check(int n, double alpha, double beta, int resolution) {
  if (n != 1 && n != 2) fail(ErrorKind::kInvalidArgument, "beta identity: n must be 1 or 2");
  if (!(alpha > 0.0 && beta > 0.0 && alpha + beta < n)) {
    fail(ErrorKind::kStripViolation, "beta identity needs alpha, beta > 0 and alpha + beta < n");
  }
  if (resolution < 4) fail(ErrorKind::kInvalidArgument, "beta identity: resolution too small");
  const double numeric = n == 1 ? beta_integral_1d(alpha, beta, resolution)
                                : beta_integral_2d(alpha, beta, resolution);
  const double closed = (h_n(n, alpha) * h_n(n, beta) / h_n(n, alpha + beta)).real();
  return {numeric, closed};
}

}  // namespace kplane
