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

#pragma once

#include <optional>
#include <vector>

#include "kplane/field.hpp"
#include "kplane/specfun.hpp"
#include "kplane/sphere.hpp"

namespace kplane {

/// Parameters of the regularized integral x_+^alpha.
struct ContinuationConfig {
  /// Split radius between the Taylor-subtracted part and the plain part.
  double rho = 0.5;
  /// Taylor order l; negative selects the smallest admissible order, raised
  /// to at least 3 and to at least 3 - Re(beta).
  int taylor_order = -1;
  /// Upper integration limit; chosen from the decay metadata when unset.
  std::optional<double> truncation_radius;
  /// Gauss-Legendre points per panel on (0, rho) and (rho, R).
  int inner_order = 16;
  int outer_order = 16;
  double tolerance = 1e-9;

  /// Throws kInvalidArgument unless 0 < rho < 1 <= R, R > rho, orders > 0.
  void validate() const;
};

/// Smallest Taylor order l >= 0 for which the subtracted integrand
/// t^beta (M(t) - sum_{j<=l} c_j t^j) is integrable at 0 given the local
/// class of M; -1 when t^beta M(t) already is (Re beta > -1).
int minimal_taylor_order(double re_beta, const LocalClass& local);

/// Taylor order to request from profile_of for x_+^beta: first the target
/// (best effort), second the required minimum.
struct TaylorPlan {
  int target;
  int required;
};
TaylorPlan plan_taylor_order(double re_beta, const LocalClass& local,
                             const ContinuationConfig& cfg);

/// Continued value of the integral of t^beta M(t) over (0, inf), without the
/// 1/Gamma(beta+1) prefactor:
///   int_0^rho t^beta A(t) dt + int_rho^R t^beta M(t) dt + sum_j c_j rho^(beta+j+1)/(beta+j+1)
/// with A = M - sum_{j<=l} c_j t^j. l = -1 gives the plain integral.
/// The B-term with index `drop_term` is omitted (used where it resonates
/// and its coefficient vanishes by parity).
struct BracketResult {
  cplx value;
  /// Analytic bound on the truncated tail beyond R.
  double tail_bound = 0.0;
  double truncation_radius = 0.0;
};
BracketResult continued_integral(const RadialProfile& profile, cplx beta, int l,
                                 const ContinuationConfig& cfg,
                                 int drop_term = -1);

/// x_+^alpha of the profile: the plain integral inside -1 < Re alpha < a-1,
/// the Taylor-subtracted three-term form to the left of it.
/// Errors: kNegativeInteger at alpha in {-1, -2, ...};
/// kStripViolation outside the continued strip; kMissingCoefficient when the
/// profile lacks the Taylor data the strip needs; kDivergence when the decay
/// metadata fails at the truncation radius.
cplx xplus(const RadialProfile& profile, cplx alpha, const ContinuationConfig& cfg);

/// Three-term form with an explicit Taylor order, also inside the plain strip.
cplx xplus_split(const RadialProfile& profile, cplx alpha, int l,
                 const ContinuationConfig& cfg);

/// x_+^m at m in {-1, -2, ...}: (-1)^(-m-1) M^(-m-1)(0).
cplx xplus_at_negative_integer(const RadialProfile& profile, int m);

/// Values along a sequence and their extrapolated limit.
struct LimitTrace {
  std::vector<double> orders;
  std::vector<cplx> values;
  cplx estimate;
  /// Observed convergence order in the distance to the limit point.
  double observed_rate = 0.0;
  bool converged = false;
};

/// Richardson extrapolation of values(s) as s -> target, assuming the error
/// is first order in |s - target|.
LimitTrace extrapolate_limit(std::vector<double> orders, std::vector<cplx> values,
                             double target);

/// lim_{s -> -1+} x_+^s(M) along a sequence in (-1, 0) decreasing to -1.
LimitTrace xplus_right_limit(const RadialProfile& profile,
                             const std::vector<double>& s_sequence,
                             const ContinuationConfig& cfg);

/// r^alpha(f) = Omega_n x_+^(alpha+n-1)(M_f) around `center`; uses the closed
/// form at alpha + n - 1 in {-1, -2, ...}.
cplx r_alpha(const ScalarField& field, cplx alpha, PointView center,
             const ContinuationConfig& cfg, const SphereRule& rule);

}  // namespace kplane
