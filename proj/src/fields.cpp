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
#include <sstream>

#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/specfun.hpp"

namespace kplane {

LocalClass ScalarField::local_class(PointView x) const {
  if (local_class_at) return local_class_at(x);
  LocalClass c;
  c.order = smoothness.order;
  c.hoelder = smoothness.hoelder.value_or(0.0);
  return c;
}

double norm(PointView x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(PointView a, PointView b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

void require_dim(int n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "field dimension must be >= 1");
}

// exp(-w) * 0F1(; b; w^2/4), i.e. the spherical average of exp(w e.omega)
// on S^{n-1} with b = n/2, scaled to stay finite for large w.
double scaled_hyp0f1(double b, double w) {
  if (w < 40.0) {
    const double z = 0.25 * w * w;
    double term = 1.0;
    double total = 1.0;
    for (int j = 1; j < 500; ++j) {
      term *= z / ((b + j - 1.0) * j);
      total += term;
      if (term < 1e-17 * total) break;
    }
    return std::exp(-w) * total;
  }
  // Gamma(nu+1) (w/2)^-nu e^-w I_nu(w) with the large-argument expansion.
  const double nu = b - 1.0;
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double total = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * w);
    if (term == 0.0) break;
    total += term;
    if (std::abs(term) < 1e-17 * std::abs(total)) break;
  }
  return std::exp(std::lgamma(nu + 1.0) - nu * std::log(0.5 * w)) * total /
         std::sqrt(2.0 * kPi * w);
}

}  // namespace

double cutoff_profile(double r) noexcept {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  // 1 - (6u^5 - 15u^4 + 10u^3), u = 2r - 1
  const double u = 2.0 * r - 1.0;
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

ScalarField gaussian(int n) {
  require_dim(n);
  ScalarField f;
  f.name = "gaussian";
  f.dim = n;
  f.evaluate = [](PointView x) {
    const double r = norm(x);
    return std::exp(-r * r);
  };
  f.decay_exponent = kInf;
  f.geometry.center.assign(n, 0.0);
  f.geometry.radial = true;
  // exp(-42.25) ~ 4.5e-19: treated as the edge of the support
  f.geometry.support_radius = 6.5;
  const double b = 0.5 * n;
  f.exact_spherical_mean = [b](PointView center, double r) {
    const double d = norm(center);
    const double gap = d - r;
    return std::exp(-gap * gap) * scaled_hyp0f1(b, 2.0 * r * d);
  };
  f.radial_taylor_at = [b](PointView center, int order) {
    const double d2 = [&] {
      double s = 0.0;
      for (double v : center) s += v * v;
      return s;
    }();
    std::vector<double> c(order + 1, 0.0);
    for (int p = 0; 2 * p <= order; ++p) {
      double acc = 0.0;
      for (int i = 0; i <= p; ++i) {
        const int j = p - i;
        double poch = 1.0;
        for (int q = 0; q < j; ++q) poch *= (b + q);
        const double lhs = ((i % 2) ? -1.0 : 1.0) / std::tgamma(i + 1.0);
        acc += lhs * std::pow(d2, j) / (poch * std::tgamma(j + 1.0));
      }
      c[2 * p] = std::exp(-d2) * acc;
    }
    return c;
  };
  f.laplacian = [n](PointView x) {
    const double r = norm(x);
    return (4.0 * r * r - 2.0 * n) * std::exp(-r * r);
  };
  return f;
}

ScalarField hoelder_cap(int n, double eps) {
  require_dim(n);
  if (!(eps > 0.0 && eps < 1.0)) {
    fail(ErrorKind::kInvalidArgument, "hoelder_cap index must lie in (0, 1)");
  }
  ScalarField f;
  std::ostringstream name;
  name << "cap:" << eps;
  f.name = name.str();
  f.dim = n;
  f.evaluate = [eps](PointView x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    const double t = 1.0 - s;
    return t > 0.0 ? std::pow(t, eps) : 0.0;
  };
  f.decay_exponent = kInf;
  f.smoothness.order = 0;
  f.smoothness.hoelder = eps;
  f.smoothness.exceptional_set = "unit sphere |x| = 1";
  f.local_class_at = [eps](PointView x) {
    LocalClass c;
    if (std::abs(norm(x) - 1.0) < 1e-9) {
      c.order = 0;
      c.hoelder = eps;
    }
    return c;
  };
  f.geometry.center.assign(n, 0.0);
  f.geometry.radial = true;
  f.geometry.support_radius = 1.0;
  f.geometry.break_radii = {1.0};
  return f;
}

ScalarField log_modulus(int n) {
  require_dim(n);
  ScalarField f;
  f.name = "logmod";
  f.dim = n;
  f.evaluate = [](PointView x) {
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    return cutoff_profile(r) / std::log(std::exp(1.0) + 1.0 / r);
  };
  f.decay_exponent = kInf;
  f.smoothness.order = 0;
  f.smoothness.exceptional_set = "origin (continuous, no Hoelder index)";
  f.local_class_at = [](PointView x) {
    LocalClass c;
    const double r = norm(x);
    if (r < 1e-12) {
      c.order = 0;
      c.hoelder = 0.0;
    } else if (std::abs(r - 0.5) < 1e-9 || std::abs(r - 1.0) < 1e-9) {
      c.order = 2;
      c.hoelder = kHoelderAll;
    }
    return c;
  };
  f.geometry.center.assign(n, 0.0);
  f.geometry.radial = true;
  f.geometry.support_radius = 1.0;
  f.geometry.break_radii = {0.0, 0.5, 1.0};
  return f;
}

ScalarField rational_decay(int n, double a) {
  require_dim(n);
  if (!(a > 0.0)) fail(ErrorKind::kInvalidArgument, "decay exponent must be > 0");
  ScalarField f;
  std::ostringstream name;
  name << "rational:" << a;
  f.name = name.str();
  f.dim = n;
  f.evaluate = [a](PointView x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::pow(1.0 + s, -0.5 * a);
  };
  f.decay_exponent = a;
  f.geometry.center.assign(n, 0.0);
  f.geometry.radial = true;
  return f;
}

ScalarField power_tail(int n, double a) {
  require_dim(n);
  if (!(a > 0.0)) fail(ErrorKind::kInvalidArgument, "decay exponent must be > 0");
  ScalarField f;
  std::ostringstream name;
  name << "tail:" << a;
  f.name = name.str();
  f.dim = n;
  f.evaluate = [a](PointView x) {
    const double r = norm(x);
    if (r >= 1.0) return std::pow(r, -a);
    return 1.0 + 0.5 * a * (1.0 - r * r);
  };
  f.decay_exponent = a;
  f.smoothness.order = 1;
  f.smoothness.hoelder = kHoelderAll;
  f.smoothness.exceptional_set = "unit sphere |x| = 1";
  f.local_class_at = [](PointView x) {
    LocalClass c;
    if (std::abs(norm(x) - 1.0) < 1e-9) {
      c.order = 1;
      c.hoelder = kHoelderAll;
    }
    return c;
  };
  f.geometry.center.assign(n, 0.0);
  f.geometry.radial = true;
  f.geometry.break_radii = {1.0};
  return f;
}

ScalarField translate(const ScalarField& field, PointView shift) {
  if (static_cast<int>(shift.size()) != field.dim) {
    fail(ErrorKind::kInvalidArgument, "translate: shift has wrong dimension");
  }
  Point v(shift.begin(), shift.end());
  ScalarField out = field;
  auto minus = [v](PointView x) {
    Point y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= v[i];
    return y;
  };
  out.evaluate = [f = field.evaluate, minus](PointView x) {
    return f(minus(x));
  };
  out.local_class_at = [field, minus](PointView x) {
    return field.local_class(minus(x));
  };
  if (!out.geometry.center.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.geometry.center[i] += v[i];
  }
  if (field.exact_spherical_mean) {
    out.exact_spherical_mean = [m = *field.exact_spherical_mean, minus](
                                   PointView c, double r) {
      return m(minus(c), r);
    };
  }
  if (field.radial_taylor_at) {
    out.radial_taylor_at = [t = *field.radial_taylor_at, minus](PointView c,
                                                               int order) {
      return t(minus(c), order);
    };
  }
  if (field.laplacian) {
    out.laplacian = [l = *field.laplacian, minus](PointView x) {
      return l(minus(x));
    };
  }
  return out;
}

ScalarField scale(const ScalarField& field, double factor) {
  ScalarField out = field;
  out.evaluate = [f = field.evaluate, factor](PointView x) {
    return factor * f(x);
  };
  out.abs_accuracy = std::abs(factor) * field.abs_accuracy;
  if (field.exact_spherical_mean) {
    out.exact_spherical_mean = [m = *field.exact_spherical_mean, factor](
                                   PointView c, double r) {
      return factor * m(c, r);
    };
  }
  if (field.radial_taylor_at) {
    out.radial_taylor_at = [t = *field.radial_taylor_at, factor](PointView c,
                                                                int order) {
      auto coeffs = t(c, order);
      for (double& v : coeffs) v *= factor;
      return coeffs;
    };
  }
  if (field.laplacian) {
    out.laplacian = [l = *field.laplacian, factor](PointView x) {
      return factor * l(x);
    };
  }
  return out;
}

ScalarField sum(const ScalarField& a, const ScalarField& b) {
  if (a.dim != b.dim) fail(ErrorKind::kInvalidArgument, "sum: dimension mismatch");
  ScalarField out;
  out.name = a.name + "+" + b.name;
  out.dim = a.dim;
  out.evaluate = [fa = a.evaluate, fb = b.evaluate](PointView x) {
    return fa(x) + fb(x);
  };
  out.decay_exponent = std::min(a.decay_exponent, b.decay_exponent);
  out.abs_accuracy = a.abs_accuracy + b.abs_accuracy;
  out.smoothness.order = std::min(a.smoothness.order, b.smoothness.order);
  if (a.smoothness.hoelder || b.smoothness.hoelder) {
    out.smoothness.hoelder = std::min(a.smoothness.hoelder.value_or(1.0),
                                      b.smoothness.hoelder.value_or(1.0));
  }
  out.local_class_at = [a, b](PointView x) {
    const LocalClass ca = a.local_class(x);
    const LocalClass cb = b.local_class(x);
    return ca.total() <= cb.total() ? ca : cb;
  };
  if (a.geometry.center == b.geometry.center) {
    out.geometry.center = a.geometry.center;
    out.geometry.break_radii = a.geometry.break_radii;
    out.geometry.support_radius =
        std::max(a.geometry.support_radius, b.geometry.support_radius);
    for (double r : b.geometry.break_radii) out.geometry.break_radii.push_back(r);
    out.geometry.radial = a.geometry.radial && b.geometry.radial;
  } else {
    // Keep the kinks of the only operand that has any.
    const bool swap = a.geometry.break_radii.empty() && !b.geometry.break_radii.empty();
    const ScalarField& major = swap ? b : a;
    const ScalarField& minor = swap ? a : b;
    const double offset = distance(major.geometry.center, minor.geometry.center);
    out.geometry.center = major.geometry.center;
    out.geometry.break_radii = major.geometry.break_radii;
    out.geometry.support_radius =
        std::max(major.geometry.support_radius, offset + minor.geometry.support_radius);
  }
  if (a.radial_taylor_at && b.radial_taylor_at) {
    out.radial_taylor_at = [ta = *a.radial_taylor_at, tb = *b.radial_taylor_at](
                               PointView c, int order) {
      auto ca = ta(c, order);
      const auto cb = tb(c, order);
      for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
      return ca;
    };
  }
  if (a.exact_spherical_mean && b.exact_spherical_mean) {
    out.exact_spherical_mean = [ma = *a.exact_spherical_mean,
                                mb = *b.exact_spherical_mean](PointView c,
                                                              double r) {
      return ma(c, r) + mb(c, r);
    };
  }
  return out;
}

ScalarField laplacian_of(const ScalarField& field, double h) {
  ScalarField out;
  out.name = "laplacian(" + field.name + ")";
  out.dim = field.dim;
  out.geometry = field.geometry;
  if (field.laplacian) {
    out.evaluate = *field.laplacian;
    out.decay_exponent = field.decay_exponent;
    out.smoothness = field.smoothness;
    return out;
  }
  out.evaluate = [f = field.evaluate, h](PointView x) {
    Point y(x.begin(), x.end());
    const double center = f(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double xi = y[i];
      y[i] = xi + h;
      acc += f(y);
      y[i] = xi - h;
      acc += f(y);
      y[i] = xi;
      acc -= 2.0 * center;
    }
    return acc / (h * h);
  };
  out.decay_exponent = field.decay_exponent == kInf ? kInf
                                                    : field.decay_exponent + 2.0;
  out.smoothness = field.smoothness;
  if (out.smoothness.order != kSmooth) {
    out.smoothness.order = std::max(0, out.smoothness.order - 2);
  }
  return out;
}

CatalogEntry catalog_lookup(const std::string& name, int n) {
  auto param = [&](const std::string& prefix) -> std::optional<double> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != rest.size() || rest.empty()) {
      fail(ErrorKind::kInvalidArgument, "bad catalog parameter in '" + name + "'");
    }
    return v;
  };
  if (name == "gaussian") {
    return {name, gaussian(n),
            "exp(-|x|^2); k-plane integral pi^(k/2) exp(-d^2); "
            "I^alpha at 0 = Gamma((n-alpha)/2) / (2^alpha Gamma(n/2))"};
  }
  if (name == "logmod") {
    return {name, log_modulus(n),
            "b(|x|)/log(e + 1/|x|); continuous, not Hoelder at 0"};
  }
  if (auto eps = param("cap:")) {
    return {name, hoelder_cap(n, *eps),
            "max(0, 1-|x|^2)^eps; compact support, Hoelder on |x| = 1"};
  }
  if (auto a = param("rational:")) {
    return {name, rational_decay(n, *a), "(1 + |x|^2)^(-a/2)"};
  }
  if (auto a = param("tail:")) {
    return {name, power_tail(n, *a), "|x|^-a outside the unit ball"};
  }
  fail(ErrorKind::kInvalidArgument, "unknown catalog field '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"gaussian", "cap:0.75", "logmod", "rational:2", "tail:1"};
}

}  // namespace kplane
