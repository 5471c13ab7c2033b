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

#include <vector>

namespace kplane {

/// Nodes and weights of a one-dimensional rule on [-1, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule with `order` nodes. Rules are built once and cached;
/// the returned reference stays valid for the lifetime of the process.
const QuadRule& gauss_legendre(int order);

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1,
/// computed by Golub-Welsch on the Jacobi matrix.
QuadRule gauss_jacobi(int order, double a, double b);

/// Sum of f over the Gauss-Legendre rule mapped to [lo, hi].
template <class F>
auto integrate_gl(F&& f, double lo, double hi, int order) {
  const QuadRule& rule = gauss_legendre(order);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  decltype(f(mid)) acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

/// Integral over [lo, hi] split into equal panels of `order`-point rules.
template <class F>
auto integrate_panels(F&& f, double lo, double hi, int panels, int order) {
  const double width = (hi - lo) / panels;
  decltype(f(lo)) acc{};
  for (int p = 0; p < panels; ++p) {
    acc += integrate_gl(f, lo + p * width, lo + (p + 1) * width, order);
  }
  return acc;
}

/// Integral over [lo, hi] with geometric refinement toward the endpoints that
/// are flagged singular. `levels` refinement panels are added per flagged end.
template <class F>
auto integrate_graded(F&& f, double lo, double hi, bool grade_lo, bool grade_hi,
                      int order, int levels = 12) {
  decltype(f(lo)) acc{};
  if (!(hi > lo)) return acc;
  double a = lo;
  double b = hi;
  // innermost panel split at the midpoint so both halves can be graded
  if (grade_lo && grade_hi) {
    const double mid = 0.5 * (lo + hi);
    return integrate_graded(f, lo, mid, true, false, order, levels) +
           integrate_graded(f, mid, hi, false, true, order, levels);
  }
  if (grade_lo) {
    double w = b - a;
    for (int j = 0; j < levels; ++j) {
      const double cut = a + 0.5 * w;
      acc += integrate_gl(f, cut, a + w, order);
      w *= 0.5;
    }
    acc += integrate_gl(f, a, a + w, order);
    return acc;
  }
  if (grade_hi) {
    double w = b - a;
    for (int j = 0; j < levels; ++j) {
      const double cut = b - 0.5 * w;
      acc += integrate_gl(f, b - w, cut, order);
      w *= 0.5;
    }
    acc += integrate_gl(f, b - w, b, order);
    return acc;
  }
  return integrate_gl(f, a, b, order);
}

}  // namespace kplane
