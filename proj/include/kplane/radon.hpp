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
#include <vector>

#include "kplane/alphaline.hpp"

namespace kplane {

/// Affine k-plane {offset + sum t_i frame_i}: orthonormal frame, offset
/// orthogonal to it (both to 1e-12).
class KPlane {
 public:
  KPlane(std::vector<Point> frame, Point offset);

  int n() const noexcept { return static_cast<int>(offset_.size()); }
  int k() const noexcept { return static_cast<int>(frame_.size()); }
  const std::vector<Point>& frame() const noexcept { return frame_; }
  const Point& offset() const noexcept { return offset_; }

  /// The plane through x spanned by `frame`.
  static KPlane through(std::vector<Point> frame, PointView x);

 private:
  std::vector<Point> frame_;
  Point offset_;
};

/// Plane-integral data: either synthesized from a field or supplied
/// externally.
struct PlaneIntegralOracle {
  enum class Provenance { kSynthesized, kExternal };
  std::function<double(const KPlane&)> integrate;
  Provenance provenance = Provenance::kExternal;

  double operator()(const KPlane& plane) const { return integrate(plane); }
};

/// Integral of the field over the plane, in polar coordinates around the
/// point of the plane closest to the field's center. Radial panels break at
/// the plane's intersections with the field's kink spheres and at its support
/// boundary; algebraic tails are mapped to (0, 1] with a Gauss-Jacobi rule.
/// `resolution` is the Gauss order per panel. kDivergence unless decay > k.
double forward(const ScalarField& field, const KPlane& plane, int resolution = 24);

PlaneIntegralOracle forward_oracle(const ScalarField& field, int resolution = 24);

/// Dual transform at x through the radial integral of spherical means:
/// Omega_k int_0^inf F(r, x) r^(k-1) dr = Omega_k Gamma(k) x_+^(k-1)(F(., x)).
double dual_composite(const ScalarField& field, PointView x, const Dimension& dim,
                      const ContinuationConfig& cfg, const SphereRule& rule);

/// x -> dual_composite(field, x) as a derived field. Its metadata is that of
/// I^k f: decay min(a, n) - k, regularity raised by k.
ScalarField dual_field(const ScalarField& field, const Dimension& dim,
                       const ContinuationConfig& cfg, const SphereRule& rule);

/// Orthonormal k-frames for averaging over planes through a point. n = 2,
/// k = 1 uses `count` equally spaced directions with a seeded random phase;
/// otherwise frames are orthonormalized Gaussian vectors.
std::vector<std::vector<Point>> sample_frames(const Dimension& dim, int count,
                                              std::uint64_t seed);

/// Average of the oracle over the planes through x spanned by `frames`.
double dual_sampled(const PlaneIntegralOracle& oracle, PointView x, const Dimension& dim,
                    const std::vector<std::vector<Point>>& frames);

/// (4 pi)^(k/2) Gamma(n/2) / Gamma((n-k)/2): dual of the transform per I^k.
double dual_riesz_constant(const Dimension& dim);

/// |dual_composite(f, x) - dual_riesz_constant * I^k f(x)|.
double dual_riesz_defect(const ScalarField& field, PointView x, const Dimension& dim,
                         const ContinuationConfig& cfg, const SphereRule& rule);

/// Line integrals of a planar field: rows (angle, offset, value) for the line
/// with direction (cos angle, sin angle) at signed distance `offset` along
/// (-sin angle, cos angle); angles in [0, pi), offsets cell-centered in
/// [-half_width, half_width].
struct SinogramRow {
  double angle;
  double offset;
  double value;
};
std::vector<SinogramRow> sinogram(const ScalarField& field, int angles, int offsets,
                                  double half_width, int resolution = 24);

}  // namespace kplane
