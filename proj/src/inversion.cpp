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


#include "kplane/inversion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "kplane/error.hpp"
#include "kplane/radon.hpp"
#include "kplane/riesz.hpp"

namespace kplane {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(i) for i < count on a few threads; rethrows the lowest-index
// failure.
template <class F>
void parallel_for(std::size_t count, const F& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_points(const std::vector<Point>& points, int n) {
  for (const Point& p : points) {
    if (static_cast<int>(p.size()) != n) {
      fail(ErrorKind::kInvalidArgument, "inversion: point dimension differs from field");
    }
  }
}

void check_decay(const ScalarField& field, int k) {
  if (!(field.decay_exponent > k)) {
    std::ostringstream os;
    os << "inversion needs decay above k = " << k << ", field '" << field.name
       << "' has " << field.decay_exponent;
    fail(ErrorKind::kClassViolation, os.str());
  }
}

void fill_reference(const ScalarField& field, InversionReport& r) {
  r.reference.resize(r.points.size());
  r.abs_error.resize(r.points.size());
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    r.reference[i] = field(r.points[i]);
    r.abs_error[i] = std::abs(r.recovered[i] - r.reference[i]);
  }
}

}  // namespace

double InversionReport::max_abs_error() const {
  double m = 0.0;
  for (double e : abs_error) m = std::max(m, e);
  return m;
}

void InversionReport::validate() const {
  const std::size_t m = points.size();
  if (recovered.size() != m || reference.size() != m || abs_error.size() != m ||
      (!traces.empty() && traces.size() != m)) {
    fail(ErrorKind::kInvalidArgument, "inversion report arrays differ in length");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (abs_error[i] != std::abs(recovered[i] - reference[i])) {
      fail(ErrorKind::kInvalidArgument, "inversion report error column is stale");
    }
  }
  if (darboux && (darboux->measured.size() != m || darboux->expected.size() != m)) {
    fail(ErrorKind::kInvalidArgument, "inversion report Darboux arrays differ in length");
  }
}

std::vector<double> GridSpec::extent() const {
  std::vector<double> e;
  for (int c : counts) e.push_back((c - 1) * h);
  return e;
}

void GridSpec::validate() const {
  if (corner.empty() || corner.size() != counts.size()) {
    fail(ErrorKind::kInvalidArgument, "grid: corner and counts differ in dimension");
  }
  if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::kInvalidArgument, "grid: h must be positive");
  for (int c : counts) {
    if (c < 2) fail(ErrorKind::kInvalidArgument, "grid: need at least two samples per axis");
  }
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int c : counts) s *= static_cast<std::size_t>(c);
  return s;
}

GridSpec GridSpec::centered(PointView center, int half_cells, double h) {
  GridSpec g;
  g.h = h;
  for (double c : center) {
    g.corner.push_back(c - half_cells * h);
    g.counts.push_back(2 * half_cells + 1);
  }
  return g;
}

InversionReport invert_hoelder(const ScalarField& field, const Dimension& dim,
                               const std::vector<Point>& points,
                               const ContinuationConfig& cfg, const SphereRule& rule) {
  const auto start = Clock::now();
  const int k = dim.k();
  check_points(points, dim.n());
  const Smoothness& s = field.smoothness;
  if (!(s.order >= 1 || s.hoelder.value_or(0.0) > 0.0)) {
    std::ostringstream os;
    os << "field '" << field.name << "' carries no Hoelder index";
    if (!s.exceptional_set.empty()) os << " (" << s.exceptional_set << ")";
    os << "; use the limit route";
    fail(ErrorKind::kClassViolation, os.str());
  }
  check_decay(field, k);
  const ScalarField g = dual_field(field, dim, cfg, rule);
  const double c = inversion_constant(dim);
  InversionReport r;
  r.route = "hoelder";
  r.dim = dim.n();
  r.points = points;
  r.recovered.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    r.recovered[i] = c * riesz(g, cplx(-k, 0.0), points[i], cfg, rule).real();
  });
  fill_reference(field, r);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<double> default_s_sequence(int k) {
  std::vector<double> s;
  for (int j = 2; j <= 8; ++j) s.push_back(-k + std::ldexp(1.0, -j));
  return s;
}

InversionReport invert_limit(const ScalarField& field, const Dimension& dim,
                             const std::vector<Point>& points,
                             const std::vector<double>& s_sequence,
                             const ContinuationConfig& cfg, const SphereRule& rule) {
  const auto start = Clock::now();
  const int k = dim.k();
  check_points(points, dim.n());
  check_decay(field, k);
  const ScalarField g = dual_field(field, dim, cfg, rule);
  const double c = inversion_constant(dim);
  InversionReport r;
  r.route = "limit";
  r.dim = dim.n();
  r.points = points;
  r.recovered.resize(points.size());
  r.traces.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    LimitTrace t = riesz_right_limit(g, -k, s_sequence, points[i], cfg, rule);
    for (cplx& v : t.values) v *= c;
    t.estimate *= c;
    r.recovered[i] = t.estimate.real();
    r.traces[i] = std::move(t);
  });
  fill_reference(field, r);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

InversionReport invert_laplacian(const ScalarField& field, const Dimension& dim,
                                 const GridSpec& grid, const ContinuationConfig& cfg,
                                 const SphereRule& rule) {
  const auto start = Clock::now();
  const int n = dim.n();
  const int k = dim.k();
  if (k % 2 != 0) {
    fail(ErrorKind::kInvalidArgument, "the Laplacian route needs even k");
  }
  grid.validate();
  if (static_cast<int>(grid.counts.size()) != n) {
    fail(ErrorKind::kInvalidArgument, "grid dimension differs from the field");
  }
  const int passes = k / 2;
  for (int c : grid.counts) {
    if (c < 2 * passes + 1) {
      std::ostringstream os;
      os << "grid needs at least " << 2 * passes + 1 << " samples per axis for " << passes
         << " Laplacian pass(es)";
      fail(ErrorKind::kGridTooSmall, os.str());
    }
  }
  check_decay(field, k);
  const ScalarField g = dual_field(field, dim, cfg, rule);

  const std::size_t total = grid.size();
  std::vector<std::size_t> stride(n);
  std::size_t acc = 1;
  for (int a = n - 1; a >= 0; --a) {
    stride[a] = acc;
    acc *= static_cast<std::size_t>(grid.counts[a]);
  }
  auto index_of = [&](std::size_t flat) {
    std::vector<int> idx(n);
    for (int a = 0; a < n; ++a) {
      idx[a] = static_cast<int>((flat / stride[a]) % grid.counts[a]);
    }
    return idx;
  };
  auto point_of = [&](const std::vector<int>& idx) {
    Point p(n);
    for (int a = 0; a < n; ++a) p[a] = grid.corner[a] + idx[a] * grid.h;
    return p;
  };

  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t i) { values[i] = g(point_of(index_of(i))); });

  const double h2 = grid.h * grid.h;
  for (int pass = 1; pass <= passes; ++pass) {
    std::vector<double> next(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
      const auto idx = index_of(i);
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        inside = inside && idx[a] >= pass && idx[a] < grid.counts[a] - pass;
      }
      if (!inside) continue;
      double lap = -2.0 * n * values[i];
      for (int a = 0; a < n; ++a) lap += values[i - stride[a]] + values[i + stride[a]];
      next[i] = lap / h2;
    }
    values = std::move(next);
  }

  const double c = inversion_constant(dim) * (passes % 2 == 0 ? 1.0 : -1.0);
  InversionReport r;
  r.route = "laplacian";
  r.dim = n;
  std::vector<double> laps;
  for (std::size_t i = 0; i < total; ++i) {
    const auto idx = index_of(i);
    bool inside = true;
    for (int a = 0; a < n; ++a) {
      inside = inside && idx[a] >= passes && idx[a] < grid.counts[a] - passes;
    }
    if (!inside) continue;
    r.points.push_back(point_of(idx));
    r.recovered.push_back(c * values[i]);
    laps.push_back(values[i]);
  }
  fill_reference(field, r);
  if (k == 2) {
    DarbouxCheck d;
    d.measured = laps;
    const double factor = -omega(k) * (n - k);
    for (double f : r.reference) d.expected.push_back(factor * f);
    r.darboux = std::move(d);
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

double laplacian_commutation_defect(const ScalarField& phi, cplx alpha, PointView x,
                                    const ContinuationConfig& cfg, const SphereRule& rule) {
  if (!(alpha.real() > 2.0)) {
    fail(ErrorKind::kStripViolation, "commutation identity needs Re alpha > 2");
  }
  const ScalarField lap = laplacian_of(phi);
  return std::abs(riesz(lap, alpha, x, cfg, rule) + riesz(phi, alpha - 2.0, x, cfg, rule));
}

void write_csv(const InversionReport& report, std::ostream& out) {
  report.validate();
  const auto old_precision = out.precision(17);
  for (int a = 0; a < report.dim; ++a) out << 'x' << a << ',';
  out << "recovered,reference,abs_error";
  std::size_t trace_len = 0;
  for (const LimitTrace& t : report.traces) trace_len = std::max(trace_len, t.values.size());
  if (!report.traces.empty()) {
    const LimitTrace& t0 = report.traces.front();
    for (std::size_t j = 0; j < trace_len; ++j) {
      out << ",trace_s=" << (j < t0.orders.size() ? t0.orders[j] : 0.0);
    }
    out << ",observed_rate,converged";
  }
  out << '\n';
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    for (double v : report.points[i]) out << v << ',';
    out << report.recovered[i] << ',' << report.reference[i] << ',' << report.abs_error[i];
    if (!report.traces.empty()) {
      const LimitTrace& t = report.traces[i];
      for (std::size_t j = 0; j < trace_len; ++j) {
        out << ',';
        if (j < t.values.size()) out << t.values[j].real();
      }
      out << ',' << t.observed_rate << ',' << (t.converged ? 1 : 0);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace kplane
