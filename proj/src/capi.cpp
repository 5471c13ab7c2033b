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


#include "kplane/kplane.h"

#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kplane/error.hpp"
#include "kplane/field.hpp"
#include "kplane/inversion.hpp"
#include "kplane/radon.hpp"
#include "kplane/riesz.hpp"
#include "kplane/verify.hpp"

struct kp_field {
  kplane::ScalarField field;
};

struct kp_config {
  kplane::ContinuationConfig cont;
  int sphere_order = 0;
  std::uint64_t seed = 1;
};

struct kp_report {
  kplane::InversionReport report;
};

namespace {

thread_local std::string g_last_error;

int set_error(int status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
int guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return KP_OK;
  } catch (const kplane::Error& e) {
    return set_error(static_cast<int>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(KP_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(KP_INTERNAL, e.what());
  } catch (...) {
    return set_error(KP_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) kplane::fail(kplane::ErrorKind::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const kp_config& config_or_default(const kp_config* cfg) {
  static const kp_config defaults;
  return cfg ? *cfg : defaults;
}

kplane::SphereRule rule_for(const kp_config& cfg, int n) {
  return kplane::SphereRule(n, cfg.sphere_order > 0 ? cfg.sphere_order
                                                     : kplane::default_sphere_order(n));
}

kplane::Point point_of(const double* x, int n) {
  require(x != nullptr, "null point");
  return kplane::Point(x, x + n);
}

std::vector<kplane::Point> points_of(const double* xs, std::size_t count, int n) {
  require(xs != nullptr || count == 0, "null point array");
  std::vector<kplane::Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(point_of(xs + i * n, n));
  return pts;
}

int store_report(kplane::InversionReport report, kp_report** out) {
  *out = new kp_report{std::move(report)};
  return KP_OK;
}

}  // namespace

extern "C" {

const char* kp_status_name(int status) {
  if (status == KP_OK) return "ok";
  if (status >= 1 && status <= 11) {
    return kplane::to_string(static_cast<kplane::ErrorKind>(status));
  }
  return "internal";
}

const char* kp_last_error(void) { return g_last_error.c_str(); }

const char* kp_version(void) { return "1.0.0"; }

void kp_free(void* ptr) { std::free(ptr); }

int kp_catalog_names(char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    std::string all;
    for (const std::string& name : kplane::catalog_names()) all += name + "\n";
    *out = copy_string(all);
  });
}

int kp_field_create(const char* name, int n, kp_field** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new kp_field{kplane::catalog_lookup(name, n).field};
  });
}

void kp_field_destroy(kp_field* field) { delete field; }

int kp_field_dim(const kp_field* field) { return field ? field->field.dim : 0; }

int kp_field_eval(const kp_field* field, const double* x, double* out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    *out = field->field(point_of(x, field->field.dim));
  });
}

int kp_config_create(kp_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new kp_config();
  });
}

void kp_config_destroy(kp_config* cfg) { delete cfg; }

int kp_config_set_rho(kp_config* cfg, double rho) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
    cfg->cont.rho = rho;
  });
}

int kp_config_set_taylor_order(kp_config* cfg, int order) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    cfg->cont.taylor_order = order < 0 ? -1 : order;
  });
}

int kp_config_set_truncation(kp_config* cfg, double radius) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    if (radius > 0.0) {
      require(radius >= 1.0, "truncation radius must be at least 1");
      cfg->cont.truncation_radius = radius;
    } else {
      cfg->cont.truncation_radius.reset();
    }
  });
}

int kp_config_set_tolerance(kp_config* cfg, double tolerance) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    require(tolerance > 0.0, "tolerance must be positive");
    cfg->cont.tolerance = tolerance;
  });
}

int kp_config_set_sphere_order(kp_config* cfg, int order) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    cfg->sphere_order = order > 0 ? order : 0;
  });
}

int kp_config_set_seed(kp_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    cfg->seed = seed;
  });
}

int kp_riesz(const kp_field* field, double alpha_re, double alpha_im, const double* x,
             const kp_config* cfg, double* out_re, double* out_im) {
  return guarded([&] {
    require(field != nullptr && out_re != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    const kplane::cplx v = kplane::riesz(field->field, kplane::cplx(alpha_re, alpha_im),
                                         point_of(x, n), c.cont, rule_for(c, n));
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

int kp_sinogram(const kp_field* field, int angles, int offsets, double half_width,
                double* out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const auto rows = kplane::sinogram(field->field, angles, offsets, half_width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[3 * i] = rows[i].angle;
      out[3 * i + 1] = rows[i].offset;
      out[3 * i + 2] = rows[i].value;
    }
  });
}

int kp_dual(const kp_field* field, int k, const double* x, const kp_config* cfg,
            double* out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    *out = kplane::dual_composite(field->field, point_of(x, n), kplane::Dimension(n, k), c.cont,
                                  rule_for(c, n));
  });
}

int kp_dual_sampled(const kp_field* field, int k, const double* x, int frames,
                    const kp_config* cfg, double* out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    const kplane::Dimension dim(n, k);
    *out = kplane::dual_sampled(kplane::forward_oracle(field->field), point_of(x, n), dim,
                                kplane::sample_frames(dim, frames, c.seed));
  });
}

int kp_invert_hoelder(const kp_field* field, int k, const double* points, size_t count,
                      const kp_config* cfg, kp_report** out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    store_report(kplane::invert_hoelder(field->field, kplane::Dimension(n, k),
                                        points_of(points, count, n), c.cont, rule_for(c, n)),
                 out);
  });
}

int kp_invert_limit(const kp_field* field, int k, const double* points, size_t count,
                    const double* s_sequence, size_t s_count, const kp_config* cfg,
                    kp_report** out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    const std::vector<double> seq = s_sequence
                                        ? std::vector<double>(s_sequence, s_sequence + s_count)
                                        : kplane::default_s_sequence(k);
    store_report(kplane::invert_limit(field->field, kplane::Dimension(n, k),
                                      points_of(points, count, n), seq, c.cont, rule_for(c, n)),
                 out);
  });
}

int kp_invert_laplacian(const kp_field* field, int k, const double* center, int half_cells,
                        double h, const kp_config* cfg, kp_report** out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "null argument");
    const kp_config& c = config_or_default(cfg);
    const int n = field->field.dim;
    const kplane::Point x0 = point_of(center, n);
    store_report(kplane::invert_laplacian(field->field, kplane::Dimension(n, k),
                                          kplane::GridSpec::centered(x0, half_cells, h), c.cont,
                                          rule_for(c, n)),
                 out);
  });
}

void kp_report_destroy(kp_report* report) { delete report; }

size_t kp_report_size(const kp_report* report) {
  return report ? report->report.points.size() : 0;
}

int kp_report_dim(const kp_report* report) { return report ? report->report.dim : 0; }

int kp_report_point(const kp_report* report, size_t i, double* x) {
  return guarded([&] {
    require(report != nullptr && x != nullptr, "null argument");
    const kplane::Point& p = report->report.points.at(i);
    std::copy(p.begin(), p.end(), x);
  });
}

int kp_report_values(const kp_report* report, size_t i, double* recovered, double* reference,
                     double* abs_error) {
  return guarded([&] {
    require(report != nullptr, "null report");
    const kplane::InversionReport& r = report->report;
    require(i < r.points.size(), "report index out of range");
    if (recovered) *recovered = r.recovered[i];
    if (reference) *reference = r.reference[i];
    if (abs_error) *abs_error = r.abs_error[i];
  });
}

double kp_report_max_abs_error(const kp_report* report) {
  return report ? report->report.max_abs_error() : 0.0;
}

double kp_report_seconds(const kp_report* report) {
  return report ? report->report.seconds : 0.0;
}

int kp_report_converged(const kp_report* report, size_t i, int* converged) {
  return guarded([&] {
    require(report != nullptr && converged != nullptr, "null argument");
    require(i < report->report.traces.size(), "report has no trace at this index");
    *converged = report->report.traces[i].converged ? 1 : 0;
  });
}

int kp_report_darboux(const kp_report* report, size_t i, double* measured, double* expected) {
  return guarded([&] {
    require(report != nullptr, "null report");
    const auto& d = report->report.darboux;
    require(d.has_value() && i < d->measured.size(), "report has no Laplacian check");
    if (measured) *measured = d->measured[i];
    if (expected) *expected = d->expected[i];
  });
}

int kp_report_csv(const kp_report* report, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    std::ostringstream os;
    kplane::write_csv(report->report, os);
    *out = copy_string(os.str());
  });
}

int kp_criterion_count(void) { return kplane::kCriterionCount; }

int kp_verify(const int* only, size_t count, uint64_t seed, kp_criterion_callback callback,
              void* user, int* failed) {
  return guarded([&] {
    require(only != nullptr || count == 0, "null criterion list");
    kplane::SuiteOptions options;
    options.only.assign(only, only + count);
    options.seed = seed;
    int failures = 0;
    kplane::run_acceptance(options, [&](const kplane::CriterionResult& res) {
      if (!res.pass()) ++failures;
      if (!callback) return;
      std::vector<std::string> summaries;
      for (const kplane::Check& c : res.checks) summaries.push_back(kplane::describe(c));
      std::vector<kp_check_view> views;
      for (std::size_t i = 0; i < res.checks.size(); ++i) {
        const kplane::Check& c = res.checks[i];
        views.push_back({c.name.c_str(), c.anchor.c_str(), c.measured, c.bound, c.upper,
                         static_cast<int>(c.relation), c.pass ? 1 : 0, c.error.c_str(),
                         summaries[i].c_str()});
      }
      const kp_criterion_view view{res.id, res.title.c_str(), res.pass() ? 1 : 0, res.seconds,
                                   views.size(), views.data()};
      callback(&view, user);
    });
    if (failed) *failed = failures;
  });
}

}  // extern "C"
