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

#include "kplane/field.hpp"

namespace kplane {

/// Evaluator for a radially symmetric field that tabulates its profile
/// G(rho) = field(center + rho e_1) once, on first use, as adaptive
/// piecewise Chebyshev interpolants split at `break_radii` (in rho^2 on the
/// innermost segment). Beyond the
/// outermost break the interpolated quantity is rho^decay G(rho) in the
/// variable rho_far / rho. Tolerances follow field.abs_accuracy.
ScalarField::Evaluator cached_radial_evaluator(const ScalarField& field);

}  // namespace kplane
