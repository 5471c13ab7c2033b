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

#include "kplane/alphaline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kplane/error.hpp"
#include "kplane/quadrature.hpp"

namespace kplane {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kTiny = 1e-300;
constexpr double kMaxRadius = 1e12;
constexpr int kKinkLevels = 10;

bool is_negative_integer(cplx z) {
  return z.imag() == 0.0 && z.real() < 0.0 && z.real() == std::round(z.real());
}

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(6);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

cplx tpow(double t, cplx beta) {
  if (beta.imag() == 0.0) return std::pow(t, beta.real());
  return std::exp(beta * std::log(t));
}

// sum_j |c_j| t^j, the magnitude entering the roundoff model of A.
double poly_magnitude(const std::vector<double>& c, int l, double t) {
  double acc = 0.0;
  double p = 1.0;
  for (int j = 0; j <= l && j < static_cast<int>(c.size()); ++j) {
    acc += std::abs(c[j]) * p;
    p *= t;
  }
  return acc;
}

bool is_kink(const RadialProfile& p, double t) {
  if (t == p.support_lo && t > 0.0) return true;
  if (t == p.support_hi) return true;
  return std::binary_search(p.breakpoints.begin(), p.breakpoints.end(), t);
}

struct MeshResult {
  cplx value;
  bool reached_floor;
};

// int_0^b t^beta A(t) dt on a geometric mesh in u = log(b/t), widening the
// panels as the integrand decays and stopping at the noise floor.
MeshResult inner_log_mesh(const std::function<cplx(double)>& integrand, double b,
                          cplx beta, bool grade_start, int order, double threshold,
                          const std::function<double(double)>& noise_at) {
  const double max_u = std::log(b / kTiny);
  double w_max = 8.0;
  if (beta.imag() != 0.0) w_max = std::min(w_max, std::max(kLn2, 3.0 / std::abs(beta.imag())));
  auto in_u = [&](double u) {
    const double t = b * std::exp(-u);
    return integrand(t) * t;
  };
  cplx total = 0.0;
  double u = 0.0;
  double w = kLn2;
  double prev_density = -1.0;
  int quiet = 0;
  double prev_mag = kInf;
  bool first = true;
  while (u < max_u) {
    const double hi = std::min(u + w, max_u);
    const cplx panel = first && grade_start
                           ? integrate_graded(in_u, u, hi, true, false, order, kKinkLevels)
                           : integrate_gl(in_u, u, hi, order);
    first = false;
    total += panel;
    const double t_mid = b * std::exp(-0.5 * (u + hi));
    // integral of t^(Re beta + 1) du over the panel
    const double e = beta.real() + 1.0;
    const double weight = std::abs(e) < 1e-12
                              ? hi - u
                              : std::pow(b, e) * (std::exp(-e * u) - std::exp(-e * hi)) / e;
    const double noise = 10.0 * noise_at(t_mid) * weight;
    const double mag = std::abs(panel);
    if (mag < threshold) {
      if (++quiet >= 2) break;
    } else if (mag < noise) {
      // at the noise floor a growing panel is noise amplified by t^beta
      if (mag > prev_mag) {
        total -= panel;
        break;
      }
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    prev_mag = mag;
    const double density = mag / (hi - u);
    double next = w;
    if (prev_density > 0.0 && density > 0.0) {
      const double rate = std::log(prev_density / density) / (0.5 * (w + (hi - u)));
      if (rate > 0.0) next = std::clamp(4.0 / rate, w, 2.0 * w);
    }
    prev_density = density;
    u = hi;
    w = std::min(next, w_max);
  }
  return {total, u >= max_u};
}

double decay_tail_constant(const RadialProfile& p, double r0) {
  const double a = p.decay_exponent;
  return std::max(std::abs(p(r0)) * std::pow(r0, a),
                  std::abs(p(2.0 * r0)) * std::pow(2.0 * r0, a));
}

}  // namespace

void ContinuationConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) {
    fail(ErrorKind::kInvalidArgument, "continuation: rho must lie in (0, 1)");
  }
  if (truncation_radius && !(*truncation_radius >= 1.0 && *truncation_radius > rho)) {
    fail(ErrorKind::kInvalidArgument,
         "continuation: truncation radius must be >= 1 and > rho");
  }
  if (inner_order < 1 || outer_order < 1) {
    fail(ErrorKind::kInvalidArgument, "continuation: quadrature orders must be positive");
  }
  if (!(tolerance > 0.0)) {
    fail(ErrorKind::kInvalidArgument, "continuation: tolerance must be positive");
  }
}

int minimal_taylor_order(double re_beta, const LocalClass& local) {
  if (re_beta > -1.0) return -1;
  for (int l = 0;; ++l) {
    if (local.order != kSmooth && l > local.order) break;
    // exponent of the remainder M - (Taylor polynomial of degree l)
    const double rem = (local.order == kSmooth || l < local.order)
                           ? l + 1.0
                           : l + local.hoelder;
    if (rem + re_beta > -1.0) return l;
  }
  std::ostringstream os;
  os << "order " << re_beta << " lies left of the continued strip (local class C^"
     << local.order << " with Hoelder index " << local.hoelder << ")";
  fail(ErrorKind::kStripViolation, os.str());
}

TaylorPlan plan_taylor_order(double re_beta, const LocalClass& local,
                             const ContinuationConfig& cfg) {
  const int required = minimal_taylor_order(re_beta, local);
  const int margin = static_cast<int>(std::ceil(3.0 - re_beta - 1e-9));
  int target = cfg.taylor_order >= 0 ? cfg.taylor_order : std::max({required, 3, margin});
  if (local.order != kSmooth) target = std::min(target, local.order);
  if (target < required) {
    if (cfg.taylor_order >= 0) {
      std::ostringstream os;
      os << "configured Taylor order " << cfg.taylor_order
         << " is below the order " << required << " needed at Re = " << re_beta;
      fail(ErrorKind::kStripViolation, os.str());
    }
    target = required;
  }
  return {target, required};
}

BracketResult continued_integral(const RadialProfile& profile, cplx beta, int l,
                                 const ContinuationConfig& cfg, int drop_term) {
  cfg.validate();
  if (l >= 0 && static_cast<int>(profile.taylor.size()) < l + 1) {
    std::ostringstream os;
    os << "profile supplies Taylor coefficients up to order "
       << static_cast<int>(profile.taylor.size()) - 1 << ", need " << l;
    fail(ErrorKind::kMissingCoefficient, os.str());
  }
  const double rho = cfg.rho;
  const double re1 = beta.real() + 1.0;
  const std::vector<double>& c = profile.taylor;

  double scale = std::abs(profile(rho));
  if (l >= 0) scale = std::max(scale, std::abs(c[0]));
  for (double b : profile.breakpoints) scale = std::max(scale, std::abs(profile(b)));
  if (profile.support_hi < kInf) {
    scale = std::max(scale, std::abs(profile(0.5 * (profile.support_lo + profile.support_hi))));
  }
  scale = std::max(scale, kTiny);
  const double tol = cfg.tolerance;

  auto poly = [&](double t) {
    double acc = 0.0;
    double p = 1.0;
    for (int j = 0; j <= l; ++j) {
      acc += c[j] * p;
      p *= t;
    }
    return acc;
  };
  std::function<cplx(double)> subtracted = [&](double t) -> cplx {
    double a;
    if (l < 0) {
      a = profile(t);
    } else if (profile.increment) {
      a = profile.increment(t) - (poly(t) - c[0]);
    } else {
      a = profile(t) - poly(t);
    }
    return a == 0.0 ? cplx(0.0) : tpow(t, beta) * a;
  };
  std::function<double(double)> noise_at = [&](double t) {
    // increments are accurate to roundoff
    const double base = l >= 0 && profile.increment ? 0.0 : profile.noise;
    return base + 1e-15 * std::max(scale, poly_magnitude(c, l, t));
  };

  // ---- inner part on (0, rho) ----
  std::vector<double> cuts;
  for (double b : profile.breakpoints) {
    if (b > 0.0 && b < rho) cuts.push_back(b);
  }
  if (profile.support_lo > 0.0 && profile.support_lo < rho) cuts.push_back(profile.support_lo);
  if (profile.support_hi > 0.0 && profile.support_hi < rho) cuts.push_back(profile.support_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double b1 = cuts.empty() ? rho : cuts.front();
  cuts.push_back(rho);

  cplx inner = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    inner += integrate_graded(subtracted, cuts[i], cuts[i + 1], true,
                              is_kink(profile, cuts[i + 1]), cfg.inner_order, kKinkLevels);
  }
  bool poly_zero = true;
  for (int j = 0; j <= l; ++j) poly_zero = poly_zero && c[j] == 0.0;
  const bool empty_core = profile.support_lo >= b1 && poly_zero;
  if (!empty_core) {
    const double threshold =
        0.1 * tol * std::max(std::abs(inner), scale * std::min(1.0, std::pow(rho, re1)));
    const MeshResult core = inner_log_mesh(subtracted, b1, beta, b1 < rho, cfg.inner_order,
                                           threshold, noise_at);
    inner += core.value;
    if (core.reached_floor && l < 0) {
      // below the underflow radius M is replaced by M(0)
      inner += profile(0.0) * tpow(kTiny, beta + 1.0) / (beta + 1.0);
    }
  }

  // ---- outer part on (rho, R) ----
  const double start = std::max(rho, profile.support_lo);
  double R = 0.0;
  double tail = 0.0;
  const double a = profile.decay_exponent;
  double r0 = 8.0 + 2.0 * profile.reach;
  for (double b : profile.breakpoints) r0 = std::max(r0, 2.0 * b);
  if (cfg.truncation_radius) {
    R = *cfg.truncation_radius;
    if (profile.support_hi > R && a < kInf) {
      if (!(a > re1)) {
        fail(ErrorKind::kStripViolation,
             "order " + describe(beta) + " is not below the decay exponent minus one");
      }
      const double C = decay_tail_constant(profile, std::min(r0, R));
      tail = C * std::pow(R, re1 - a) / (a - re1);
    }
  } else if (profile.support_hi < kInf) {
    R = profile.support_hi;
  } else if (a < kInf) {
    if (!(a > re1)) {
      fail(ErrorKind::kStripViolation,
           "order " + describe(beta) + " is not below the decay exponent minus one");
    }
    const double C = decay_tail_constant(profile, r0);
    if (C == 0.0) {
      R = r0;
    } else {
      const double target = 0.1 * tol * scale * (a - re1) / C;
      R = std::pow(target, 1.0 / (re1 - a));
      R = std::clamp(R, r0, kMaxRadius);
      const double at_R = std::abs(profile(R)) * std::pow(R, a);
      if (at_R > 1e3 * C) {
        std::ostringstream os;
        os << "declared decay exponent " << a << " fails at radius " << R
           << " (|M(R)| R^a = " << at_R << " vs " << C << " near " << r0 << ")";
        fail(ErrorKind::kDivergence, os.str());
      }
      tail = C * std::pow(R, re1 - a) / (a - re1);
    }
  } else {
    // super-polynomial decay without a support bound: double until negligible
    R = r0;
    int quiet = 0;
    while (R < kMaxRadius) {
      const double v = std::abs(profile(R)) * std::pow(R, re1);
      if (v < 0.01 * tol * scale) {
        if (++quiet >= 2) break;
      } else {
        quiet = 0;
      }
      R *= 2.0;
    }
    if (R >= kMaxRadius) {
      fail(ErrorKind::kDivergence, "profile does not decay before the maximal radius");
    }
  }

  cplx outer = 0.0;
  if (R > start) {
    std::vector<double> pts = {start};
    for (double b : profile.breakpoints) {
      if (b > start && b < R) pts.push_back(b);
    }
    if (profile.support_hi > start && profile.support_hi < R) pts.push_back(profile.support_hi);
    pts.push_back(R);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const bool bounded = profile.support_hi < kInf;
    auto plain = [&](double t) -> cplx {
      const double m = profile(t);
      return m == 0.0 ? cplx(0.0) : tpow(t, beta) * m;
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double p = pts[i];
      const double q = pts[i + 1];
      const bool kink_p = is_kink(profile, p);
      const bool kink_q = is_kink(profile, q);
      double cur = p;
      while (cur < q) {
        double nxt = std::min(q, 2.0 * cur);
        if (bounded) nxt = std::min(nxt, cur + 1.0);
        // a short remainder joins this panel so the grading reaches q
        if (q - nxt < 0.25 * (nxt - cur)) nxt = q;
        outer += integrate_graded(plain, cur, nxt, kink_p && cur == p, kink_q && nxt == q,
                                  cfg.outer_order, kKinkLevels);
        cur = nxt;
      }
    }
  }

  // ---- closed-form B term ----
  cplx bterm = 0.0;
  for (int j = 0; j <= l; ++j) {
    if (j == drop_term || c[j] == 0.0) continue;
    const cplx e = beta + static_cast<double>(j + 1);
    if (std::abs(e) == 0.0) {
      fail(ErrorKind::kPole, "B term resonates at order " + describe(beta));
    }
    bterm += c[j] * tpow(rho, e) / e;
  }

  return {inner + outer + bterm, tail, R};
}

cplx xplus(const RadialProfile& profile, cplx alpha, const ContinuationConfig& cfg) {
  if (is_negative_integer(alpha)) {
    fail(ErrorKind::kNegativeInteger,
         "x_+ at negative integer " + describe(alpha) +
             " is given by the closed form; use xplus_at_negative_integer");
  }
  const double a = profile.decay_exponent;
  if (!(alpha.real() < a - 1.0)) {
    std::ostringstream os;
    os << "order " << describe(alpha) << " is not below decay exponent minus one ("
       << a - 1.0 << ")";
    fail(ErrorKind::kStripViolation, os.str());
  }
  if (alpha.real() > -1.0) {
    return continued_integral(profile, alpha, -1, cfg).value * reciprocal_gamma(alpha + 1.0);
  }
  const TaylorPlan plan = plan_taylor_order(alpha.real(), profile.local_class, cfg);
  const int l = std::min(plan.target, static_cast<int>(profile.taylor.size()) - 1);
  if (l < plan.required) {
    std::ostringstream os;
    os << "order " << describe(alpha) << " needs Taylor coefficients up to "
       << plan.required << ", profile supplies "
       << static_cast<int>(profile.taylor.size()) - 1;
    fail(ErrorKind::kMissingCoefficient, os.str());
  }
  return continued_integral(profile, alpha, l, cfg).value * reciprocal_gamma(alpha + 1.0);
}

cplx xplus_split(const RadialProfile& profile, cplx alpha, int l,
                 const ContinuationConfig& cfg) {
  if (is_negative_integer(alpha)) {
    fail(ErrorKind::kNegativeInteger,
         "x_+ at negative integer " + describe(alpha) + " is given by the closed form");
  }
  if (!(alpha.real() < profile.decay_exponent - 1.0)) {
    fail(ErrorKind::kStripViolation,
         "order " + describe(alpha) + " is not below decay exponent minus one");
  }
  if (l < std::max(0, minimal_taylor_order(alpha.real(), profile.local_class))) {
    fail(ErrorKind::kStripViolation,
         "Taylor order too small for order " + describe(alpha));
  }
  return continued_integral(profile, alpha, l, cfg).value * reciprocal_gamma(alpha + 1.0);
}

cplx xplus_at_negative_integer(const RadialProfile& profile, int m) {
  if (m >= 0) {
    fail(ErrorKind::kInvalidArgument, "xplus_at_negative_integer needs m <= -1");
  }
  const int j = -m - 1;
  if (static_cast<int>(profile.taylor.size()) < j + 1) {
    std::ostringstream os;
    os << "x_+ at " << m << " needs the Taylor coefficient of order " << j;
    fail(ErrorKind::kMissingCoefficient, os.str());
  }
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * std::tgamma(j + 1.0) * profile.taylor[j];
}

LimitTrace extrapolate_limit(std::vector<double> orders, std::vector<cplx> values,
                             double target) {
  LimitTrace out;
  out.orders = std::move(orders);
  out.values = std::move(values);
  const std::size_t m = out.values.size();
  if (m == 0) fail(ErrorKind::kInvalidArgument, "limit: empty sequence");
  out.estimate = out.values.back();
  if (m < 2) return out;
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = std::abs(out.orders[i] - target);
  std::vector<cplx> est;
  for (std::size_t i = 1; i < m; ++i) {
    est.push_back((h[i - 1] * out.values[i] - h[i] * out.values[i - 1]) / (h[i - 1] - h[i]));
  }
  out.estimate = est.back();
  if (m >= 3) {
    const double d1 = std::abs(out.values[m - 2] - out.values[m - 3]);
    const double d2 = std::abs(out.values[m - 1] - out.values[m - 2]);
    if (d1 > 0.0 && d2 > 0.0) {
      out.observed_rate = std::log(d1 / d2) / std::log(h[m - 3] / h[m - 2]);
    }
  }
  const double floor = 1e-8 * std::max(1.0, std::abs(out.estimate));
  out.converged = true;
  if (est.size() >= 3) {
    const double e1 = std::abs(est[est.size() - 2] - est[est.size() - 3]);
    const double e2 = std::abs(est.back() - est[est.size() - 2]);
    out.converged = e2 <= std::max(1.5 * e1, floor);
  }
  return out;
}

LimitTrace xplus_right_limit(const RadialProfile& profile,
                             const std::vector<double>& s_sequence,
                             const ContinuationConfig& cfg) {
  if (s_sequence.empty()) fail(ErrorKind::kInvalidArgument, "limit: empty s sequence");
  for (std::size_t i = 0; i < s_sequence.size(); ++i) {
    const double s = s_sequence[i];
    if (!(s > -1.0 && s < 0.0) || (i > 0 && !(s < s_sequence[i - 1]))) {
      fail(ErrorKind::kInvalidArgument, "limit: s sequence must decrease inside (-1, 0)");
    }
  }
  std::vector<cplx> values;
  for (double s : s_sequence) values.push_back(xplus(profile, s, cfg));
  return extrapolate_limit(s_sequence, std::move(values), -1.0);
}

cplx r_alpha(const ScalarField& field, cplx alpha, PointView center,
             const ContinuationConfig& cfg, const SphereRule& rule) {
  const cplx beta = alpha + static_cast<double>(field.dim - 1);
  const LocalClass local = field.local_class(center);
  if (is_negative_integer(beta)) {
    const int m = static_cast<int>(beta.real());
    const RadialProfile p = profile_of(field, center, rule, -m - 1);
    return omega(field.dim) * xplus_at_negative_integer(p, m);
  }
  if (beta.real() > -1.0) {
    return omega(field.dim) * xplus(profile_of(field, center, rule, -1), beta, cfg);
  }
  const TaylorPlan plan = plan_taylor_order(beta.real(), local, cfg);
  const RadialProfile p = profile_of(field, center, rule, plan.target, plan.required);
  return omega(field.dim) * xplus(p, beta, cfg);
}

}  // namespace kplane
