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

#include <complex>

namespace kplane {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Ambient dimension n and plane dimension k, 1 <= k <= n-1.
class Dimension {
 public:
  Dimension(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

 private:
  int n_;
  int k_;
};

/// True when z is (numerically exactly) one of 0, -1, -2, ...
bool is_nonpositive_integer(cplx z) noexcept;

/// Complex Gamma. Throws ErrorKind::kPole on 0, -1, -2, ...
cplx gamma(cplx z);

/// log Gamma on the principal branch of the Lanczos sum; Re z >= 0.5 only.
cplx lgamma_right(cplx z);

/// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
cplx reciprocal_gamma(cplx z) noexcept;

/// H_n(alpha) = 2^alpha pi^(n/2) Gamma(alpha/2) / Gamma((n-alpha)/2).
/// Exactly zero on n + 2N0, pole error on -2N0.
cplx h_n(int n, cplx alpha);

/// 1/H_n(alpha); entire, zero on -2N0. Pole error on n + 2N0.
cplx reciprocal_h_n(int n, cplx alpha);

/// lim_{alpha -> -2m} (alpha + 2m) H_n(alpha).
double h_n_residue(int n, int m);

/// Surface measure of S^{n-1}: 2 pi^(n/2) / Gamma(n/2).
double omega(int n);

/// (4 pi)^(-k/2) Gamma((n-k)/2) / Gamma(n/2).
double inversion_constant(const Dimension& dim);

}  // namespace kplane
