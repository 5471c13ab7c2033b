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
#include <ostream>
#include <string>
#include <vector>

#include "kplane/alphaline.hpp"

namespace kplane {

/// Values of Delta g next to -Omega_k (n - k) f at the report points, for
/// the Laplacian route with k = 2.
struct DarbouxCheck {
  std::vector<double> measured;
  std::vector<double> expected;
};

struct InversionReport {
  std::string route;
  int dim = 0;
  std::vector<Point> points;
  std::vector<double> recovered;
  /// Direct evaluations of the input field.
  std::vector<double> reference;
  std::vector<double> abs_error;
  /// Limit route only: one trace per point, scaled like `recovered`.
  std::vector<LimitTrace> traces;
  std::optional<DarbouxCheck> darboux;
  double seconds = 0.0;

  double max_abs_error() const;
  /// Throws kInvalidArgument unless the arrays are congruent and abs_error
  /// equals |recovered - reference|.
  void validate() const;
};

/// Regular grid corner + h * (i_1, ..., i_n), 0 <= i_j < counts[j].
struct GridSpec {
  Point corner;
  std::vector<int> counts;
  double h = 0.0;

  /// Edge lengths (counts - 1) h.
  std::vector<double> extent() const;
  void validate() const;
  std::size_t size() const;

  /// Grid of 2 * half_cells + 1 points per axis centered at `center`.
  static GridSpec centered(PointView center, int half_cells, double h);
};

/// inversion_constant * I^-k g at each point, g the dual transform of the
/// forward transform of `field` as a derived field. kClassViolation when
/// the field is not Hoelder (use invert_limit) or decays no faster than k.
InversionReport invert_hoelder(const ScalarField& field, const Dimension& dim,
                               const std::vector<Point>& points,
                               const ContinuationConfig& cfg, const SphereRule& rule);

/// -k + 2^-j for j = 2..8.
std::vector<double> default_s_sequence(int k);

/// inversion_constant * lim_{s -> -k+} I^s g, extrapolated from the
/// sequence. Points whose trace does not settle are flagged in `traces`.
InversionReport invert_limit(const ScalarField& field, const Dimension& dim,
                             const std::vector<Point>& points,
                             const std::vector<double>& s_sequence,
                             const ContinuationConfig& cfg, const SphereRule& rule);

/// g tabulated on the grid, the 2n+1 point Laplacian applied k/2 times,
/// scaled by (-1)^(k/2) inversion_constant; reported at the points that
/// keep a full stencil. Even k only.
InversionReport invert_laplacian(const ScalarField& field, const Dimension& dim,
                                 const GridSpec& grid, const ContinuationConfig& cfg,
                                 const SphereRule& rule);

/// |I^alpha (Delta phi)(x) + I^(alpha-2) phi(x)|; needs Re alpha > 2.
double laplacian_commutation_defect(const ScalarField& phi, cplx alpha, PointView x,
                                    const ContinuationConfig& cfg, const SphereRule& rule);

/// Point coordinates, recovered, reference, abs_error, then one column per
/// trace entry for limit reports. 17 significant digits.
void write_csv(const InversionReport& report, std::ostream& out);

}  // namespace kplane
