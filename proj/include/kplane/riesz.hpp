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

#include "kplane/alphaline.hpp"

namespace kplane {

struct RieszRequest {
  ScalarField field;
  cplx alpha;
  Point x;
  ContinuationConfig cfg;
  /// Defaults to SphereRule(n, default_sphere_order(n)).
  std::optional<SphereRule> rule;
};

/// Riesz potential I^alpha f(x), continued to every alpha in the strip
/// allowed by the local class of f at x and its decay.
///
/// Evaluated as Omega_n / H_n(alpha) times the continued integral of
/// t^(alpha-1) M(t), M the spherical mean of f around x. At alpha = -2m the
/// pole of H_n cancels against the resonant B term and the value is
/// Omega_n c_2m / res_{-2m} H_n (in particular I^0 f(x) = f(x)). At odd
/// negative alpha the resonant term vanishes by parity.
///
/// Errors: kPole on n + 2N0; kStripViolation outside the strip;
/// propagated quadrature and Taylor errors.
cplx riesz(const RieszRequest& req);
cplx riesz(const ScalarField& field, cplx alpha, PointView x,
           const ContinuationConfig& cfg, const SphereRule& rule);

/// Metadata of I^alpha f for real alpha: decay b - alpha with b = min(a, n)
/// (slightly below n when a = n); local class raised by floor(alpha) when f
/// is Hoelder at the point, by floor(alpha) - 1 (Hoelder of every index)
/// when f is merely continuous there.
double potential_decay(const ScalarField& field, double alpha);
LocalClass potential_class(const LocalClass& base, double alpha);

/// x -> Re I^alpha f(x) as a field, evaluated on demand, carrying the
/// propagated decay and regularity metadata.
ScalarField riesz_field(const ScalarField& field, double alpha,
                        const ContinuationConfig& cfg, const SphereRule& rule);

/// lim_{s -> target+} I^s f(x) along `s_sequence`, which must decrease to
/// `target` inside (target, target + 1). Used at target 0 for fields without
/// Hoelder metadata, and at -k by the limit-form inversion.
LimitTrace riesz_right_limit(const ScalarField& field, double target,
                             const std::vector<double>& s_sequence, PointView x,
                             const ContinuationConfig& cfg, const SphereRule& rule);

/// |I^alpha (I^beta f)(x) - I^(alpha+beta) f(x)| with the inner potential as
/// a derived field. Requires Re alpha > 0, Re beta > 0 and
/// Re(alpha + beta) < min(a, n); kStripViolation otherwise.
double semigroup_defect(const ScalarField& field, double alpha, double beta,
                        PointView x, const ContinuationConfig& cfg,
                        const SphereRule& rule);

struct BetaIdentity {
  double numeric;
  double closed_form;
};

/// Integral of |e - v|^(beta-n) |v|^(alpha-n) over R^n (e a unit vector) by
/// singularity-split quadrature, against H_n(alpha) H_n(beta) / H_n(alpha+beta).
/// n in {1, 2}; alpha, beta > 0 and alpha + beta < n.
BetaIdentity beta_identity_check(int n, double alpha, double beta, int resolution = 24);

}  // namespace kplane
