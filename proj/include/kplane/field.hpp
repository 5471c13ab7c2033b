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

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kplane {

using Point = std::vector<double>;
using PointView = std::span<const double>;

inline constexpr int kSmooth = std::numeric_limits<int>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Stands for "Hoelder of every index below one"; strictly less than 1 so
/// strip checks of the form -l - eps < Re(alpha) keep their strictness.
inline constexpr double kHoelderAll = 1.0 - 1e-12;

/// Global regularity metadata: the field is C^order everywhere, and on
/// `exceptional_set` the order-th derivatives are only Hoelder of index
/// `hoelder` (or merely continuous when it is empty).
struct Smoothness {
  int order = kSmooth;
  std::optional<double> hoelder;
  std::string exceptional_set;
};

/// Regularity class at one point: C^order near x with order-th derivatives
/// Hoelder of index `hoelder` (0 means continuity only).
struct LocalClass {
  int order = kSmooth;
  double hoelder = 0.0;

  /// Membership in the locally Hoelder class C^{0+} at the point.
  bool is_hoelder() const noexcept { return order >= 1 || hoelder > 0.0; }
  /// Sum order + hoelder, the regularity that sets continuation strips.
  double total() const noexcept {
    return order == kSmooth ? kInf : order + hoelder;
  }
};

/// Geometric hints used by the quadrature layers: the field vanishes (or is
/// negligible) outside the ball of `support_radius` around `center`, and it
/// loses smoothness only on the spheres of the listed radii around `center`
/// (radius 0 marks an isolated point).
struct FieldGeometry {
  Point center;
  double support_radius = kInf;
  std::vector<double> break_radii;
  /// The field depends only on the distance to `center`.
  bool radial = false;
};

/// An evaluable function on R^n together with its decay and regularity
/// metadata. Fields are immutable once built; copies share callables.
struct ScalarField {
  using Evaluator = std::function<double(PointView)>;
  using MeanFn = std::function<double(PointView center, double radius)>;
  using TaylorFn =
      std::function<std::vector<double>(PointView center, int order)>;

  std::string name;
  int dim = 0;
  Evaluator evaluate;
  /// f(x) = O(|x|^-a); +inf for super-polynomial decay.
  double decay_exponent = kInf;
  Smoothness smoothness;
  FieldGeometry geometry;
  /// Regularity at a point; defaults to `smoothness` when unset.
  std::function<LocalClass(PointView)> local_class_at;
  /// Closed-form spherical mean around an arbitrary center.
  std::optional<MeanFn> exact_spherical_mean;
  /// Taylor coefficients c_0..c_order of the spherical-mean profile at a
  /// center (odd entries are zero).
  std::optional<TaylorFn> radial_taylor_at;
  /// Radial fields: rho -> f(center + rho e_1) - f(center) evaluated
  /// without cancellation, to roundoff relative to f(center).
  std::optional<std::function<double(double)>> radial_increment;
  /// Closed-form Laplacian when known.
  std::optional<Evaluator> laplacian;
  /// Absolute error of `evaluate` beyond roundoff (nonzero for fields that
  /// are themselves computed by quadrature).
  double abs_accuracy = 0.0;

  double operator()(PointView x) const { return evaluate(x); }
  LocalClass local_class(PointView x) const;
};

double norm(PointView x) noexcept;
double distance(PointView a, PointView b) noexcept;

// ---- catalog -------------------------------------------------------------

/// x -> exp(-|x|^2).
ScalarField gaussian(int n);

/// x -> max(0, 1 - |x|^2)^eps; Hoelder of index eps on the unit sphere.
ScalarField hoelder_cap(int n, double eps);

/// x -> b(|x|) / log(e + 1/|x|), continuous but not Hoelder at 0.
ScalarField log_modulus(int n);

/// x -> (1 + |x|^2)^(-a/2), decay exponent a.
ScalarField rational_decay(int n, double a);

/// x -> |x|^(-a) for |x| >= 1, glued smoothly to a bump inside; used as a
/// tail patch for decay diagnostics.
ScalarField power_tail(int n, double a);

/// Smooth cutoff of log_modulus: 1 on [0, 1/2], 0 on [1, inf), C^2 quintic
/// smoothstep in between.
double cutoff_profile(double r) noexcept;

ScalarField translate(const ScalarField& field, PointView shift);
ScalarField scale(const ScalarField& field, double factor);
ScalarField sum(const ScalarField& a, const ScalarField& b);

/// Closed-form Laplacian when the field has one, else second-order central
/// differences with step `h`.
ScalarField laplacian_of(const ScalarField& field, double h = 1e-3);

struct CatalogEntry {
  std::string name;
  ScalarField field;
  std::string closed_form_notes;
};

/// Resolve a catalog name such as "gaussian", "cap:0.75", "logmod",
/// "rational:2" in dimension n.
CatalogEntry catalog_lookup(const std::string& name, int n);

/// Names accepted by catalog_lookup (parameterized ones with an example).
std::vector<std::string> catalog_names();

// ---- class diagnostics ---------------------------------------------------

/// Negated least-squares slope of log|f(r u)| against log r.
double estimate_decay_exponent(const ScalarField& field, PointView direction,
                               std::span<const double> radii);

/// Slope of log sup_{|h| <= s} |f(x+h) - f(x)| against log s, clamped to
/// (0, 1]. Uses 32 seeded random directions per scale.
double estimate_hoelder_index(const ScalarField& field, PointView x,
                              std::span<const double> probe_scales,
                              std::uint64_t seed = 7);

/// Per-scale oscillations behind estimate_hoelder_index, for reporting.
std::vector<double> local_oscillations(const ScalarField& field, PointView x,
                                       std::span<const double> probe_scales,
                                       std::uint64_t seed = 7);

}  // namespace kplane
