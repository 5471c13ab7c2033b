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


#include "kplane/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>

#include "kplane/error.hpp"
#include "kplane/inversion.hpp"
#include "kplane/radon.hpp"
#include "kplane/riesz.hpp"

namespace kplane {

bool CriterionResult::pass() const noexcept {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string describe(const Check& check) {
  char buf[128];
  switch (check.relation) {
    case Check::Relation::kBelow:
      std::snprintf(buf, sizeof buf, "%.3g < %.3g", check.measured, check.bound);
      break;
    case Check::Relation::kAbove:
      std::snprintf(buf, sizeof buf, "%.3g > %.3g", check.measured, check.bound);
      break;
    case Check::Relation::kInside:
      std::snprintf(buf, sizeof buf, "%.3g <= %.4g <= %.3g", check.bound, check.measured,
                    check.upper);
      break;
  }
  return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(CriterionResult& out) : out_(out) {}

  void below(std::string name, std::string anchor, const std::function<double()>& measure,
             double bound) {
    add(std::move(name), std::move(anchor), measure, Check::Relation::kBelow, bound, 0.0);
  }
  void above(std::string name, std::string anchor, const std::function<double()>& measure,
             double bound) {
    add(std::move(name), std::move(anchor), measure, Check::Relation::kAbove, bound, 0.0);
  }
  void inside(std::string name, std::string anchor, const std::function<double()>& measure,
              double lo, double hi) {
    add(std::move(name), std::move(anchor), measure, Check::Relation::kInside, lo, hi);
  }

 private:
  void add(std::string name, std::string anchor, const std::function<double()>& measure,
           Check::Relation relation, double bound, double upper) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.relation = relation;
    c.bound = bound;
    c.upper = upper;
    try {
      c.measured = measure();
      switch (relation) {
        case Check::Relation::kBelow: c.pass = c.measured < bound; break;
        case Check::Relation::kAbove: c.pass = c.measured > bound; break;
        case Check::Relation::kInside: c.pass = c.measured >= bound && c.measured <= upper; break;
      }
    } catch (const Error& e) {
      c.measured = std::nan("");
      c.error = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      c.measured = std::nan("");
      c.error = e.what();
    }
    out_.checks.push_back(std::move(c));
  }

  CriterionResult& out_;
};

std::string fmt(const char* pattern, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string point_label(const Point& x) {
  std::string s = "x=(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%g", i ? "," : "", x[i]);
    s += buf;
  }
  return s + ")";
}

std::string dim_label(int n, int k) {
  return "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

const SphereRule& rule_for(int n) {
  static const SphereRule r1(1, default_sphere_order(1));
  static const SphereRule r2(2, default_sphere_order(2));
  static const SphereRule r3(3, default_sphere_order(3));
  switch (n) {
    case 1: return r1;
    case 2: return r2;
    case 3: return r3;
    default: fail(ErrorKind::kInvalidArgument, "suite uses n <= 3");
  }
}

RadialProfile central_profile(const ScalarField& f, int taylor_order) {
  const Point origin(f.dim, 0.0);
  return profile_of(f, origin, rule_for(f.dim), taylor_order);
}

std::vector<Point> lattice3() {
  std::vector<Point> pts;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) pts.push_back({double(i), double(j)});
  return pts;
}

void criterion_1(Recorder& r) {
  const ScalarField g = gaussian(2);
  const RadialProfile p = central_profile(g, 4);
  const ContinuationConfig cfg;
  const std::string anchor = "regularized power at negative integers";
  r.below("gaussian x_+^-1 = f(0)", anchor,
          [&] { return std::abs(xplus_at_negative_integer(p, -1) - 1.0); }, 1e-12);
  for (double d : {-1e-4, 1e-4}) {
    r.below(fmt("gaussian x_+^(-1%+.0e) vs f(0)", d), anchor,
            [&] { return std::abs(xplus(p, -1.0 + d, cfg) - 1.0); }, 1e-3);
  }
}

void criterion_2(Recorder& r) {
  const ContinuationConfig cfg;
  const std::string anchor = "right limit of x_+^s at s = -1";
  std::vector<double> seq;
  for (int j = 2; j <= 12; ++j) seq.push_back(-1.0 + std::ldexp(1.0, -j));
  struct Case {
    const char* label;
    ScalarField field;
  };
  for (const Case& c : {Case{"gaussian", gaussian(2)}, Case{"logmod", log_modulus(2)}}) {
    const RadialProfile p = central_profile(c.field, 0);
    const double f0 = c.field(Point{0.0, 0.0});
    r.below(std::string(c.label) + " extrapolated limit vs f(0)", anchor, [&] {
      return std::abs(xplus_right_limit(p, seq, cfg).estimate - f0);
    }, 1e-3);
    r.below(std::string(c.label) + " raw x_+^s at s=-1+1e-4 vs f(0)", anchor,
            [&] { return std::abs(xplus(p, -1.0 + 1e-4, cfg) - f0); }, 1e-2);
  }
}

void criterion_3(Recorder& r, std::uint64_t seed) {
  const ScalarField g = gaussian(2);
  const RadialProfile p = central_profile(g, 12);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-4.9, 0.9);
  std::uniform_real_distribution<double> im(-1.0, 1.0);
  std::vector<cplx> alphas;
  while (alphas.size() < 10) {
    const cplx a(re(rng), im(rng));
    if (is_nonpositive_integer(a + 0.0) || std::abs(a.real() - std::round(a.real())) < 1e-3) continue;
    alphas.push_back(a);
  }
  r.below("gaussian x_+^alpha spread over rho in {0.3,0.5,0.8}, 10 seeded alpha",
          "uniqueness of the continuation", [&] {
            double worst = 0.0;
            for (cplx a : alphas) {
              std::vector<cplx> v;
              for (double rho : {0.3, 0.5, 0.8}) {
                ContinuationConfig cfg;
                cfg.rho = rho;
                v.push_back(xplus(p, a, cfg));
              }
              worst = std::max({worst, std::abs(v[0] - v[1]), std::abs(v[0] - v[2]),
                                std::abs(v[1] - v[2])});
            }
            return worst;
          }, 1e-8);
}

void criterion_4(Recorder& r) {
  const ContinuationConfig cfg;
  const std::vector<Point> pts{{0.0, 0.0}, {0.3, 0.1}, {-0.5, 0.4}, {0.2, -0.9}, {1.2, 0.7}};
  for (const auto& [label, f] :
       {std::pair{"gaussian", gaussian(2)}, std::pair{"cap(3/4)", hoelder_cap(2, 0.75)}}) {
    r.below(std::string(label) + " max |I^0 f - f| over 5 points", "order-zero potential is the identity",
            [&] {
              double worst = 0.0;
              for (const Point& x : pts) {
                worst = std::max(worst, std::abs(riesz(f, 0.0, x, cfg, rule_for(2)) - f(x)));
              }
              return worst;
            }, 1e-6);
  }
}

void criterion_5(Recorder& r) {
  const ContinuationConfig cfg;
  for (auto [n, alpha] : {std::pair{2, 1.0}, std::pair{2, 0.5}, std::pair{3, 2.0}, std::pair{3, 1.3}}) {
    const ScalarField g = gaussian(n);
    const Point origin(n, 0.0);
    const double exact = std::tgamma((n - alpha) / 2) / (std::pow(2.0, alpha) * std::tgamma(n / 2.0));
    char name[96];
    std::snprintf(name, sizeof name, "gaussian n=%d alpha=%g at 0 vs closed form", n, alpha);
    r.below(name, "Riesz potential of the Gaussian",
            [&] { return std::abs(riesz(g, alpha, origin, cfg, rule_for(n)) - exact); }, 1e-6);
  }
}

void criterion_6(Recorder& r) {
  const ContinuationConfig cfg;
  struct Case {
    int n;
    double a, b;
    Point off;
  };
  for (const Case& c : {Case{2, 0.5, 0.5, {0.6, -0.3}}, Case{3, 0.7, 0.9, {0.4, 0.2, -0.3}}}) {
    const ScalarField g = gaussian(c.n);
    for (const Point& x : {Point(c.n, 0.0), c.off}) {
      char name[128];
      std::snprintf(name, sizeof name, "gaussian n=%d alpha=%g beta=%g %s", c.n, c.a, c.b,
                    point_label(x).c_str());
      r.below(name, "semigroup law I^a I^b = I^(a+b)",
              [&] { return semigroup_defect(g, c.a, c.b, x, cfg, rule_for(c.n)); }, 1e-5);
    }
  }
}

void criterion_7(Recorder& r) {
  struct Case {
    int n;
    double a, b;
  };
  for (const Case& c : {Case{1, 0.3, 0.4}, Case{1, 0.25, 0.5}, Case{2, 0.5, 0.5}, Case{2, 0.7, 0.9}}) {
    char name[96];
    std::snprintf(name, sizeof name, "n=%d alpha=%g beta=%g relative", c.n, c.a, c.b);
    r.below(name, "beta-type convolution of Riesz kernels", [&] {
      const BetaIdentity b = beta_identity_check(c.n, c.a, c.b);
      return std::abs(b.numeric - b.closed_form) / std::abs(b.closed_form);
    }, 1e-4);
  }
}

void criterion_8(Recorder& r) {
  const ContinuationConfig cfg;
  const std::string anchor = "dual transform proportional to I^k";
  for (auto [n, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
    const ScalarField g = gaussian(n);
    const Dimension dim(n, k);
    std::vector<Point> pts{Point(n, 0.0)};
    const std::vector<Point> extra2{{0.5, 0.0}, {-0.3, 0.8}, {1.1, -0.4}, {0.0, 1.7}};
    const std::vector<Point> extra3{{0.5, 0.0, 0.0}, {-0.3, 0.8, 0.1}, {1.1, -0.4, 0.2},
                                    {0.0, 0.6, -1.4}};
    for (const Point& x : n == 2 ? extra2 : extra3) pts.push_back(x);
    for (const Point& x : pts) {
      r.below("gaussian " + dim_label(n, k) + " " + point_label(x) + " defect", anchor,
              [&] { return dual_riesz_defect(g, x, dim, cfg, rule_for(n)); }, 1e-5);
    }
  }
  r.below("gaussian (2,1) dual at 0 vs sqrt(pi)", anchor, [&] {
    return std::abs(dual_composite(gaussian(2), Point{0.0, 0.0}, Dimension(2, 1), cfg,
                                   rule_for(2)) - std::sqrt(kPi));
  }, 1e-6);
}

void criterion_9(Recorder& r) {
  const ContinuationConfig cfg;
  const std::string anchor = "inversion by I^-k for Hoelder functions";
  r.below("gaussian (2,1) lattice3 max abs error", anchor, [&] {
    return invert_hoelder(gaussian(2), Dimension(2, 1), lattice3(), cfg, rule_for(2)).max_abs_error();
  }, 1e-3);
  r.below("cap(3/4) (2,1) lattice3 max abs error", anchor, [&] {
    return invert_hoelder(hoelder_cap(2, 0.75), Dimension(2, 1), lattice3(), cfg, rule_for(2))
        .max_abs_error();
  }, 1e-2);
}

void criterion_10(Recorder& r) {
  const ContinuationConfig cfg;
  const std::string anchor = "inversion as a right limit s -> -k";
  const ScalarField lm = log_modulus(2);
  const Point origin{0.0, 0.0};
  std::optional<InversionReport> report;
  auto need = [&]() -> const InversionReport& {
    if (!report) report = invert_limit(lm, Dimension(2, 1), {origin}, default_s_sequence(1), cfg, rule_for(2));
    return *report;
  };
  r.below("logmod (2,1) x=0 extrapolated abs error", anchor,
          [&] { return need().max_abs_error(); }, 5e-2);
  r.below("logmod trace: error increases in last 3 steps", anchor, [&] {
    const InversionReport& rep = need();
    const LimitTrace& t = rep.traces.at(0);
    const double f0 = rep.reference.at(0);
    std::vector<double> err;
    for (cplx v : t.values) err.push_back(std::abs(v.real() - f0));
    if (err.size() < 4) fail(ErrorKind::kNonConvergence, "trace shorter than 4");
    int increases = 0;
    for (std::size_t i = err.size() - 3; i < err.size(); ++i) increases += err[i] >= err[i - 1];
    return double(increases);
  }, 0.5);
}

void criterion_11(Recorder& r) {
  const ContinuationConfig cfg;
  const std::string anchor = "inversion by iterated Laplacian, even k";
  const ScalarField g = gaussian(3);
  const Dimension dim(3, 2);
  const Point origin{0.0, 0.0, 0.0};
  std::optional<InversionReport> coarse;
  std::optional<InversionReport> fine;
  auto get = [&](std::optional<InversionReport>& slot, double h) -> const InversionReport& {
    if (!slot) slot = invert_laplacian(g, dim, GridSpec::centered(origin, 1, h), cfg, rule_for(3));
    return *slot;
  };
  r.below("gaussian (3,2) center relative error h=0.05", anchor, [&] {
    const InversionReport& rep = get(coarse, 0.05);
    return rep.abs_error.at(0) / std::abs(rep.reference.at(0));
  }, 1e-2);
  r.above("error ratio h=0.05 / h=0.025", anchor, [&] {
    return get(coarse, 0.05).abs_error.at(0) / get(fine, 0.025).abs_error.at(0);
  }, 3.0);
  r.below("Laplacian of dual at 0 vs -2 pi, relative", anchor, [&] {
    const DarbouxCheck& d = get(coarse, 0.05).darboux.value();
    return std::abs(d.measured.at(0) - (-2.0 * kPi)) / (2.0 * kPi);
  }, 1e-2);
}

void criterion_12(Recorder& r) {
  const ContinuationConfig cfg;
  for (int n : {2, 3}) {
    const ScalarField g = gaussian(n);
    const std::vector<Point> pts =
        n == 2 ? std::vector<Point>{{0.0, 0.0}, {0.7, -0.4}}
               : std::vector<Point>{{0.0, 0.0, 0.0}, {0.3, 0.5, -0.6}};
    for (const Point& x : pts) {
      r.below("gaussian n=" + std::to_string(n) + " alpha=2.5 " + point_label(x),
              "Laplacian commutes with I^alpha",
              [&] { return laplacian_commutation_defect(g, 2.5, x, cfg, rule_for(n)); }, 1e-4);
    }
  }
}

void criterion_13(Recorder& r, std::uint64_t seed) {
  const ContinuationConfig cfg;
  r.inside("decay exponent of I^1 gaussian in R^2", "decay of Riesz potentials", [&] {
    const ScalarField p = riesz_field(gaussian(2), 1.0, cfg, rule_for(2));
    const std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
    const Point dir{0.6, 0.8};
    return estimate_decay_exponent(p, dir, radii);
  }, 0.9, 1.1);
  r.above("Hoelder index of I^1 cap(1/2) at x=(1,0)", "smoothness gain of Riesz potentials", [&] {
    const ScalarField p = riesz_field(hoelder_cap(2, 0.5), 1.0, cfg, rule_for(2));
    const std::vector<double> scales{1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
    return estimate_hoelder_index(p, Point{1.0, 0.0}, scales, seed);
  }, 0.8);
}

void criterion_14(Recorder& r, std::uint64_t seed) {
  const ContinuationConfig cfg;
  r.below("gaussian (2,1) x=(1,0): 512 sampled frames vs radial route",
          "dual transform by two routes", [&] {
            const ScalarField g = gaussian(2);
            const Dimension dim(2, 1);
            const Point x{1.0, 0.0};
            const double sampled =
                dual_sampled(forward_oracle(g), x, dim, sample_frames(dim, 512, seed));
            return std::abs(sampled - dual_composite(g, x, dim, cfg, rule_for(2)));
          }, 1e-3);
}

const char* title_of(int id) {
  static const char* titles[kCriterionCount] = {
      "continuation at negative integers",
      "right limit at s = -1",
      "independence of the split radius",
      "I^0 is the identity",
      "Riesz closed form for the Gaussian",
      "semigroup law",
      "beta identity",
      "dual transform vs I^k",
      "Hoelder inversion round trip",
      "limit inversion round trip",
      "Laplacian inversion round trip",
      "Laplacian commutation",
      "regularity diagnostics",
      "dual transform cross-route",
  };
  return titles[id - 1];
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const SuiteOptions& options, const std::function<void(const CriterionResult&)>& on_result) {
  for (int id : options.only) {
    if (id < 1 || id > kCriterionCount) {
      fail(ErrorKind::kInvalidArgument, "no acceptance criterion " + std::to_string(id));
    }
  }
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    CriterionResult res;
    res.id = id;
    res.title = title_of(id);
    Recorder rec(res);
    const auto start = Clock::now();
    switch (id) {
      case 1: criterion_1(rec); break;
      case 2: criterion_2(rec); break;
      case 3: criterion_3(rec, options.seed); break;
      case 4: criterion_4(rec); break;
      case 5: criterion_5(rec); break;
      case 6: criterion_6(rec); break;
      case 7: criterion_7(rec); break;
      case 8: criterion_8(rec); break;
      case 9: criterion_9(rec); break;
      case 10: criterion_10(rec); break;
      case 11: criterion_11(rec); break;
      case 12: criterion_12(rec); break;
      case 13: criterion_13(rec, options.seed); break;
      case 14: criterion_14(rec, options.seed); break;
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (on_result) on_result(res);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace kplane
