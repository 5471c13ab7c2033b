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


#include "radial_cache.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>

#include "kplane/specfun.hpp"

namespace kplane {

namespace {

constexpr int kNodes = 24;
constexpr int kMaxDepth = 12;
// pieces touching an anchored segment end refine further toward it
constexpr int kMaxDepthAtEdge = 40;
constexpr double kRelTol = 1e-11;
constexpr std::size_t kMaxPieces = 512;

struct Piece {
  double lo;
  double hi;
  std::vector<double> coeffs;
};

double clenshaw(const std::vector<double>& c, double s) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * s * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + c[0];
}

class RadialCache {
 public:
  explicit RadialCache(const ScalarField& field) : field_(field) {
    const FieldGeometry& geo = field.geometry;
    center_ = geo.center;
    edges_.push_back(0.0);
    std::vector<double> breaks = geo.break_radii;
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks) {
      if (b > edges_.back()) edges_.push_back(b);
    }
    far_ = 4.0 * std::max(1.0, edges_.back());
    if (far_ > edges_.back()) edges_.push_back(far_);
    const double a = field.decay_exponent;
    decay_ = std::isfinite(a) && a > 0.0 ? a : 0.0;
  }

  double operator()(PointView y) {
    std::call_once(built_, [this] { build(); });
    const double rho = distance(y, center_);
    if (rho >= far_) {
      const double u = far_ / rho;
      return lookup(tail_, u) * std::pow(rho, -decay_);
    }
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), rho);
    const std::size_t seg = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return lookup(inner_[seg], seg == 0 ? rho * rho : rho);
  }

 private:
  double profile(double rho) const {
    Point y = center_;
    y[0] += rho;
    return field_(y);
  }

  double tail_value(double u) const {
    const double rho = far_ / u;
    return profile(rho) * std::pow(rho, decay_);
  }

  // Known values at the ends of a segment; pieces touching an anchored end
  // must reproduce it, which catches algebraic singularities there.
  struct Ends {
    double lo;
    double hi;
    std::optional<double> lo_value;
    std::optional<double> hi_value;
  };

  // noise(lo, hi): absolute noise of f on [lo, hi]
  template <class F, class N>
  void fit(const F& f, const N& noise, double lo, double hi, int depth, const Ends& ends,
           std::vector<Piece>& out) const {
    std::vector<double> v(kNodes);
    double vmax = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      const double s = std::cos(kPi * (i + 0.5) / kNodes);
      v[i] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * s);
      vmax = std::max(vmax, std::abs(v[i]));
    }
    std::vector<double> c(kNodes, 0.0);
    for (int j = 0; j < kNodes; ++j) {
      double acc = 0.0;
      for (int i = 0; i < kNodes; ++i) acc += v[i] * std::cos(kPi * j * (i + 0.5) / kNodes);
      c[j] = (j == 0 ? 1.0 : 2.0) * acc / kNodes;
    }
    const double resid = std::abs(c[kNodes - 1]) + std::abs(c[kNodes - 2]) + std::abs(c[kNodes - 3]);
    const double tol = kRelTol * std::max(vmax, scale_) + 2.0 * noise(lo, hi);
    const bool at_lo = lo == ends.lo && ends.lo_value.has_value();
    const bool at_hi = hi == ends.hi && ends.hi_value.has_value();
    bool ends_ok = true;
    if (at_lo) ends_ok = ends_ok && std::abs(clenshaw(c, -1.0) - *ends.lo_value) <= tol;
    if (at_hi) ends_ok = ends_ok && std::abs(clenshaw(c, 1.0) - *ends.hi_value) <= tol;
    const int max_depth = at_lo || at_hi ? kMaxDepthAtEdge : kMaxDepth;
    if ((resid <= tol && ends_ok) || depth >= max_depth || out.size() >= kMaxPieces) {
      out.push_back({lo, hi, std::move(c)});
      return;
    }
    const double mid = 0.5 * (lo + hi);
    fit(f, noise, lo, mid, depth + 1, ends, out);
    fit(f, noise, mid, hi, depth + 1, ends, out);
  }

  static double lookup(const std::vector<Piece>& pieces, double x) {
    const auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                                     [](double v, const Piece& p) { return v < p.lo; });
    const Piece& p = it == pieces.begin() ? pieces.front() : *(it - 1);
    const double s = std::clamp((2.0 * x - p.lo - p.hi) / (p.hi - p.lo), -1.0, 1.0);
    return clenshaw(p.coeffs, s);
  }

  void build() {
    scale_ = 0.0;
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
      scale_ = std::max(scale_, std::abs(profile(0.5 * (edges_[i] + edges_[i + 1]))));
    }
    auto g = [this](double rho) { return profile(rho); };
    const double eps = field_.abs_accuracy;
    auto flat = [eps](double, double) { return eps; };
    std::vector<double> at_edge;
    for (double e : edges_) at_edge.push_back(profile(e));
    inner_.resize(edges_.size() - 1);
    // the profile is even in rho; fitting in rho^2 keeps it free of odd terms
    auto g_sq = [this](double v) { return profile(std::sqrt(v)); };
    const double v1 = edges_[1] * edges_[1];
    fit(g_sq, flat, 0.0, v1, 0, Ends{0.0, v1, at_edge[0], at_edge[1]}, inner_[0]);
    for (std::size_t i = 1; i + 1 < edges_.size(); ++i) {
      fit(g, flat, edges_[i], edges_[i + 1], 0,
          Ends{edges_[i], edges_[i + 1], at_edge[i], at_edge[i + 1]}, inner_[i]);
    }
    auto h = [this](double u) { return tail_value(u); };
    // noise of rho^decay G grows with rho, i.e. toward u = 0
    auto scaled = [this, eps](double lo, double) {
      return lo > 0.0 ? eps * std::pow(far_ / lo, decay_) : kInf;
    };
    fit(h, scaled, 0.0, 1.0, 0, Ends{0.0, 1.0, std::nullopt, tail_value(1.0)}, tail_);
  }

  ScalarField field_;
  Point center_;
  std::vector<double> edges_;
  double far_ = 0.0;
  double decay_ = 0.0;
  double scale_ = 0.0;
  std::once_flag built_;
  std::vector<std::vector<Piece>> inner_;
  std::vector<Piece> tail_;
};

}  // namespace

ScalarField::Evaluator cached_radial_evaluator(const ScalarField& field) {
  auto cache = std::make_shared<RadialCache>(field);
  return [cache](PointView y) { return (*cache)(y); };
}

}  // namespace kplane
