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

#include <functional>
#include <memory>
#include <vector>

#include "kplane/field.hpp"

namespace kplane {

/// Antipodally symmetric product rule on S^{n-1}.
///
/// n = 1 is the two-point sphere {-1, +1}. n = 2 uses 2*order equally spaced
/// nodes on the circle. For n >= 3 the rule is the tensor product of an
/// `order`-point Gauss-Jacobi rule in the polar cosine z (weight
/// (1-z^2)^((n-3)/2)) with the order-`order` rule on S^{n-2}. Weights sum to
/// the surface measure of the sphere and the rule integrates polynomials of
/// degree <= 2*order - 1 exactly.
class SphereRule {
 public:
  SphereRule(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return weights_.size(); }
  PointView node(std::size_t i) const {
    return PointView(nodes_.data() + i * dim_, dim_);
  }
  double weight(std::size_t i) const { return weights_[i]; }
  /// The rule on S^{n-2} used as the azimuthal factor; null for n = 1.
  const SphereRule* azimuthal() const noexcept { return inner_.get(); }

 private:
  int dim_;
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::shared_ptr<const SphereRule> inner_;
};

/// Default rule order used when none is configured: 32 for the circle,
/// 12 for n >= 3.
int default_sphere_order(int dim) noexcept;

/// Mean of the field over the sphere of radius r around center:
/// (1/Omega_n) * integral of f(center + r w) dw. Exactly f(center) at r = 0.
///
/// The full rule is used when the sphere neither leaves the field's support
/// ball nor crosses one of its kink spheres, and for radii up to 1 around
/// points other than the field's center. Otherwise the mean is computed
/// zonally around the axis pointing at the field's geometric center, with
/// panel breaks at the crossing angles and graded panels at the kinks.
/// `baseline` is subtracted from every sample, so small differences
/// M(r) - baseline keep their relative accuracy.
double mean_value(const ScalarField& field, PointView center, double r,
                  const SphereRule& rule, double baseline = 0.0);

/// Spherical-mean profile t -> M(t) of a field around one center.
struct RadialProfile {
  std::function<double(double)> evaluate;
  double decay_exponent = kInf;
  /// Taylor coefficients c_0..c_l at t = 0 (M^(j)(0) = j! c_j).
  std::vector<double> taylor;
  bool even = false;
  /// Regularity of the profile at t = 0.
  LocalClass local_class;
  /// Radii where the profile loses smoothness (kinks).
  std::vector<double> breakpoints;
  /// The profile vanishes outside [support_lo, support_hi].
  double support_lo = 0.0;
  double support_hi = kInf;
  /// Absolute evaluation error beyond roundoff.
  double noise = 0.0;
  /// Distance from the profile's center to the field's center.
  double reach = 0.0;
  /// t -> M(t) - M(0) without cancellation, when available.
  std::function<double(double)> increment;

  double operator()(double t) const { return evaluate(t); }
};

/// Numerical Taylor coefficients of an even profile at 0 by even-order
/// central differences with Richardson extrapolation. Returns the
/// coefficients c_0..c_k for the largest k <= order that converged.
std::vector<double> even_taylor_coefficients(
    const std::function<double(double)>& profile, int order, double step);

/// Spherical-mean profile of `field` around `center`.
///
/// Taylor coefficients up to `taylor_order` are exact when the field supplies
/// them, numerical otherwise; odd orders are zero. Coefficients above
/// `required_order` are best effort (truncated when differentiation does not
/// converge); failing to reach `required_order` raises kTaylorFailure.
/// A negative `required_order` means "same as taylor_order". At the center
/// of a radial field that supplies `radial_increment` the profile carries
/// it as `increment`.
RadialProfile profile_of(const ScalarField& field, PointView center,
                         const SphereRule& rule, int taylor_order,
                         int required_order = -1);

}  // namespace kplane
