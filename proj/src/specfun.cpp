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

#include "kplane/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "kplane/error.hpp"

namespace kplane {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kPole: return "pole";
    case ErrorKind::kStripViolation: return "strip violation";
    case ErrorKind::kDivergence: return "divergence";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kTaylorFailure: return "taylor failure";
    case ErrorKind::kClassViolation: return "class violation";
    case ErrorKind::kNonConvergence: return "non-convergence";
    case ErrorKind::kGridTooSmall: return "grid too small";
    case ErrorKind::kMissingCoefficient: return "missing coefficient";
    case ErrorKind::kNegativeInteger: return "negative integer order";
  }
  return "unknown";
}

Dimension::Dimension(int n, int k) : n_(n), k_(k) {
  if (n < 2 || k < 1 || k > n - 1) {
    std::ostringstream os;
    os << "dimension requires n >= 2 and 1 <= k <= n-1, got n=" << n
       << " k=" << k;
    fail(ErrorKind::kInvalidArgument, os.str());
  }
}

namespace {

// Lanczos sum with g = 671/128 and 14 terms; relative error below 1e-15 for
// Re z >= 0.5 on the strip the library is tested on.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kLanczosG = 5.24218750000000000;  // 671/128 + 1/2
constexpr double kSqrt2Pi = 2.5066282746310005024;

// sin(pi z) with exact zeros at integers on the real axis.
cplx sin_pi(cplx z) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (x == std::nearbyint(x)) return 0.0;
    // reduce to [-1, 1] first so large arguments keep their digits
    const double r = std::remainder(x, 2.0);
    return std::sin(kPi * r);
  }
  const double r = std::remainder(z.real(), 2.0);
  return std::sin(kPi * cplx(r, z.imag()));
}

}  // namespace

bool is_nonpositive_integer(cplx z) noexcept {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::nearbyint(z.real());
}

cplx lgamma_right(cplx z) {
  cplx y = z;
  cplx tmp = z + kLanczosG;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(kSqrt2Pi * ser / z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream os;
    os << "Gamma has a pole at " << z.real();
    fail(ErrorKind::kPole, os.str());
  }
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (sin_pi(z) * std::exp(lgamma_right(1.0 - z)));
  }
  if (z.imag() == 0.0) return std::exp(lgamma_right(z).real());
  return std::exp(lgamma_right(z));
}

cplx reciprocal_gamma(cplx z) noexcept {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) {
    return sin_pi(z) * std::exp(lgamma_right(1.0 - z)) / kPi;
  }
  if (z.imag() == 0.0) return std::exp(-lgamma_right(z).real());
  return std::exp(-lgamma_right(z));
}

cplx h_n(int n, cplx alpha) {
  if (is_nonpositive_integer(alpha / 2.0)) {
    std::ostringstream os;
    os << "H_" << n << " has a pole at alpha=" << alpha.real()
       << "; use h_n_residue";
    fail(ErrorKind::kPole, os.str());
  }
  return std::pow(cplx(2.0), alpha) * std::pow(kPi, 0.5 * n) *
         gamma(alpha / 2.0) * reciprocal_gamma((double(n) - alpha) / 2.0);
}

cplx reciprocal_h_n(int n, cplx alpha) {
  if (is_nonpositive_integer((double(n) - alpha) / 2.0)) {
    std::ostringstream os;
    os << "1/H_" << n << " has a pole at alpha=" << alpha.real();
    fail(ErrorKind::kPole, os.str());
  }
  return std::pow(cplx(2.0), -alpha) * std::pow(kPi, -0.5 * n) *
         gamma((double(n) - alpha) / 2.0) * reciprocal_gamma(alpha / 2.0);
}

double h_n_residue(int n, int m) {
  if (n < 1 || m < 0) {
    fail(ErrorKind::kInvalidArgument, "h_n_residue needs n >= 1, m >= 0");
  }
  // (alpha + 2m) Gamma(alpha/2) -> 2 (-1)^m / m!
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double log_mfact = std::lgamma(m + 1.0);
  return std::pow(2.0, -2.0 * m) * std::pow(kPi, 0.5 * n) * 2.0 * sign *
         std::exp(-log_mfact) / std::tgamma(0.5 * n + m);
}

double omega(int n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "omega needs n >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double inversion_constant(const Dimension& dim) {
  const int n = dim.n();
  const int k = dim.k();
  return std::pow(4.0 * kPi, -0.5 * k) * std::tgamma(0.5 * (n - k)) /
         std::tgamma(0.5 * n);
}

}  // namespace kplane
