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


#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kplane/kplane.h"
#include "run_config.hpp"

namespace {

using kplane_cli::ConfigError;
using kplane_cli::RunConfig;
using kplane_cli::format_double;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// A failed library call, carrying its status.
struct CallError {
  int status;
  std::string message;
};

void check(int status) {
  if (status != KP_OK) throw CallError{status, kp_last_error()};
}

struct FieldDeleter {
  void operator()(kp_field* f) const { kp_field_destroy(f); }
};
struct ConfigDeleter {
  void operator()(kp_config* c) const { kp_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(kp_report* r) const { kp_report_destroy(r); }
};
struct StringDeleter {
  void operator()(char* s) const { kp_free(s); }
};
using FieldPtr = std::unique_ptr<kp_field, FieldDeleter>;
using ConfigPtr = std::unique_ptr<kp_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<kp_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

FieldPtr make_field(const std::string& name, int n) {
  kp_field* f = nullptr;
  check(kp_field_create(name.c_str(), n, &f));
  return FieldPtr(f);
}

ConfigPtr make_config(const RunConfig& rc) {
  kp_config* c = nullptr;
  check(kp_config_create(&c));
  ConfigPtr cfg(c);
  check(kp_config_set_rho(c, rc.rho));
  check(kp_config_set_taylor_order(c, rc.taylor_order));
  check(kp_config_set_truncation(c, rc.truncation));
  check(kp_config_set_tolerance(c, rc.tolerance));
  check(kp_config_set_sphere_order(c, rc.sphere_order));
  check(kp_config_set_seed(c, rc.seed));
  return cfg;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Runs body(i) for i < count on a few threads; rethrows the failure with
/// the lowest index.
template <class F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::optional<CallError>> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          body(i);
        } catch (const CallError& e) {
          errors[i] = e;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) throw *e;
  }
}

/// Destination of CSV output: --output, else KPLANE_OUTPUT_DIR/<command>.csv,
/// else stdout. "-" forces stdout; relative paths are taken inside
/// KPLANE_OUTPUT_DIR when it is set.
class Output {
 public:
  explicit Output(const RunConfig& rc) {
    const char* dir = std::getenv("KPLANE_OUTPUT_DIR");
    std::filesystem::path path;
    if (rc.output == "-") return;
    if (!rc.output.empty()) {
      path = rc.output;
      if (dir && *dir && path.is_relative()) path = std::filesystem::path(dir) / path;
    } else if (dir && *dir) {
      path = std::filesystem::path(dir) / (rc.command + ".csv");
    } else {
      return;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    file_.open(path, std::ios::binary);
    if (!file_) throw ConfigError("field 'output': cannot open '" + path.string() + "'");
    path_ = path.string();
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }
  const std::string& path() const { return path_; }

 private:
  std::ofstream file_;
  std::string path_;
};

void coordinate_header(std::ostream& os, int n) {
  for (int i = 0; i < n; ++i) os << "x" << i << ",";
}

void coordinates(std::ostream& os, const std::vector<double>& x) {
  for (double v : x) os << format_double(v) << ",";
}

// ---- commands -------------------------------------------------------------

int run_verify(const RunConfig& rc) {
  Output out(rc);
  struct State {
    std::ostream* csv;
    int total = 0;
  } state{out.to_file() ? &out.stream() : nullptr};
  if (state.csv) {
    *state.csv << "criterion,title,check,anchor,measured,bound,upper,relation,pass\n";
  }
  auto callback = [](const kp_criterion_view* c, void* user) {
    auto* st = static_cast<State*>(user);
    ++st->total;
    std::printf("[%s] %2d %s (%.1f s)\n", c->pass ? "PASS" : "FAIL", c->id, c->title, c->seconds);
    for (std::size_t i = 0; i < c->check_count; ++i) {
      const kp_check_view& v = c->checks[i];
      std::printf("       %-4s %s | %s | %s%s%s\n", v.pass ? "ok" : "FAIL", v.name, v.anchor,
                  v.summary, *v.error ? " | " : "", v.error);
      if (st->csv) {
        static const char* relations[] = {"below", "above", "inside"};
        *st->csv << c->id << ",\"" << c->title << "\",\"" << v.name << "\",\"" << v.anchor
                 << "\"," << format_double(v.measured) << "," << format_double(v.bound) << ","
                 << format_double(v.upper) << "," << relations[v.relation] << ","
                 << (v.pass ? 1 : 0) << "\n";
      }
    }
    std::fflush(stdout);
  };
  int failed = 0;
  check(kp_verify(rc.only.data(), rc.only.size(), rc.seed, callback, &state, &failed));
  std::printf("verify: %d/%d criteria passed\n", state.total - failed, state.total);
  return failed == 0 ? kExitPass : kExitFailure;
}

int run_riesz(const RunConfig& rc) {
  const FieldPtr field = make_field(rc.field, rc.n);
  const ConfigPtr cfg = make_config(rc);
  const auto pts = kplane_cli::resolve_points(rc);
  std::vector<double> re(pts.size()), im(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    check(kp_riesz(field.get(), rc.alpha_re, rc.alpha_im, pts[i].data(), cfg.get(), &re[i],
                   &im[i]));
  });
  Output out(rc);
  std::ostream& os = out.stream();
  coordinate_header(os, rc.n);
  os << "alpha_re,alpha_im,value_re,value_im\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    coordinates(os, pts[i]);
    os << format_double(rc.alpha_re) << "," << format_double(rc.alpha_im) << ","
       << format_double(re[i]) << "," << format_double(im[i]) << "\n";
  }
  return kExitPass;
}

int run_radon(const RunConfig& rc) {
  const FieldPtr field = make_field(rc.field, rc.n);
  if (rc.angles > 0) {
    if (rc.n != 2) throw ConfigError("field 'sinogram': needs a planar field (dim 2,1)");
    std::vector<double> rows(3 * static_cast<std::size_t>(rc.angles) * rc.offsets);
    check(kp_sinogram(field.get(), rc.angles, rc.offsets, rc.half_width, rows.data()));
    Output out(rc);
    std::ostream& os = out.stream();
    os << "angle,offset,value\n";
    for (std::size_t i = 0; i < rows.size(); i += 3) {
      os << format_double(rows[i]) << "," << format_double(rows[i + 1]) << ","
         << format_double(rows[i + 2]) << "\n";
    }
    return kExitPass;
  }
  const ConfigPtr cfg = make_config(rc);
  const auto pts = kplane_cli::resolve_points(rc);
  std::vector<double> composite(pts.size()), sampled(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    check(kp_dual(field.get(), rc.k, pts[i].data(), cfg.get(), &composite[i]));
    if (rc.frames > 0) {
      check(kp_dual_sampled(field.get(), rc.k, pts[i].data(), rc.frames, cfg.get(), &sampled[i]));
    }
  });
  Output out(rc);
  std::ostream& os = out.stream();
  coordinate_header(os, rc.n);
  os << "dual" << (rc.frames > 0 ? ",dual_sampled" : "") << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    coordinates(os, pts[i]);
    os << format_double(composite[i]);
    if (rc.frames > 0) os << "," << format_double(sampled[i]);
    os << "\n";
  }
  return kExitPass;
}

ReportPtr invert(const kp_field* field, const RunConfig& rc, const kp_config* cfg) {
  kp_report* report = nullptr;
  if (rc.route == "laplacian") {
    std::vector<double> center = rc.center.empty() ? std::vector<double>(rc.n, 0.0) : rc.center;
    if (static_cast<int>(center.size()) != rc.n) {
      throw ConfigError("field 'center': expected " + std::to_string(rc.n) + " coordinates");
    }
    check(kp_invert_laplacian(field, rc.k, center.data(), rc.grid, rc.h, cfg, &report));
    return ReportPtr(report);
  }
  std::vector<double> flat;
  const auto pts = kplane_cli::resolve_points(rc);
  for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
  if (rc.route == "hoelder") {
    check(kp_invert_hoelder(field, rc.k, flat.data(), pts.size(), cfg, &report));
  } else {
    check(kp_invert_limit(field, rc.k, flat.data(), pts.size(),
                          rc.s_sequence.empty() ? nullptr : rc.s_sequence.data(),
                          rc.s_sequence.size(), cfg, &report));
  }
  return ReportPtr(report);
}

int run_invert(const RunConfig& rc) {
  const FieldPtr field = make_field(rc.field, rc.n);
  const ConfigPtr cfg = make_config(rc);
  const ReportPtr report = invert(field.get(), rc, cfg.get());
  char* text = nullptr;
  check(kp_report_csv(report.get(), &text));
  const StringPtr csv(text);
  Output out(rc);
  out.stream() << csv.get();
  const double worst = kp_report_max_abs_error(report.get());
  std::fprintf(stderr, "invert %s: %zu points, max abs error %.3g (%.1f s)\n", rc.route.c_str(),
               kp_report_size(report.get()), worst, kp_report_seconds(report.get()));
  double measured = 0.0, expected = 0.0;
  if (kp_report_darboux(report.get(), 0, &measured, &expected) == KP_OK) {
    std::fprintf(stderr, "Laplacian of the dual transform at the first point: %.8g (expected %.8g)\n",
                 measured, expected);
  }
  if (rc.max_error > 0.0 && !(worst <= rc.max_error)) {
    std::fprintf(stderr, "max abs error exceeds %.3g\n", rc.max_error);
    return kExitFailure;
  }
  return kExitPass;
}

int run_explore(const RunConfig& rc) {
  const ConfigPtr cfg = make_config(rc);
  const auto pts = kplane_cli::resolve_points(rc);
  std::vector<double> flat;
  for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
  Output out(rc);
  std::ostream& os = out.stream();
  os << "decay,";
  coordinate_header(os, rc.n);
  os << "recovered,reference,abs_error,status\n";
  for (double a : rc.decays) {
    const FieldPtr field = make_field("rational:" + shortest(a), rc.n);
    kp_report* raw = nullptr;
    const int status = kp_invert_hoelder(field.get(), rc.k, flat.data(), pts.size(), cfg.get(), &raw);
    const ReportPtr report(raw);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << format_double(a) << ",";
      coordinates(os, pts[i]);
      if (status == KP_OK) {
        double rec = 0.0, ref = 0.0, err = 0.0;
        check(kp_report_values(report.get(), i, &rec, &ref, &err));
        os << format_double(rec) << "," << format_double(ref) << "," << format_double(err)
           << ",ok\n";
      } else {
        double ref = 0.0;
        check(kp_field_eval(field.get(), pts[i].data(), &ref));
        os << "nan," << format_double(ref) << ",nan," << kp_status_name(status) << "\n";
      }
    }
  }
  return kExitPass;
}

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help{
      {"dim", "ambient and plane dimension n,k"},
      {"field", "catalog field, e.g. gaussian, cap:0.75, logmod, rational:2"},
      {"alpha", "order of the Riesz potential, re or re,im"},
      {"s-sequence", "orders decreasing to -k for the limit route, or default"},
      {"points", "origin, lattice3 or x,y;x,y"},
      {"route", "inversion route: hoelder, limit or laplacian"},
      {"grid", "laplacian route: cells on each side of the center"},
      {"h", "laplacian route: grid spacing"},
      {"center", "laplacian route: grid center, or origin"},
      {"rho", "split radius of the continued integral, in (0, 1)"},
      {"taylor-order", "Taylor order of the subtraction, or auto"},
      {"truncation", "upper integration limit, or auto"},
      {"tolerance", "target accuracy of the continued integral"},
      {"sphere-order", "order of the sphere rule, or auto"},
      {"sinogram", "radon: AxB angles x offsets of planar line integrals"},
      {"half-width", "radon: offset range of the sinogram"},
      {"frames", "radon: planes sampled for the second dual-transform route"},
      {"seed", "seed for sampled frames and random probes"},
      {"output", "CSV destination ('-' for stdout)"},
      {"only", "verify: comma-separated criteria, or all"},
      {"decays", "explore: decay exponents of rational fields"},
      {"max-error", "invert: exit 1 when the max abs error exceeds this"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-plane transforms, Riesz potentials and inversion"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(kp_version()));

  const std::map<std::string, std::string> descriptions{
      {"verify", "run the acceptance suite and print a per-check table"},
      {"riesz", "Riesz potential at points"},
      {"radon", "sinogram of a planar field, or the dual transform at points"},
      {"invert", "recover a field from its transform"},
      {"explore", "Hoelder inversion of rational fields near the decay boundary"},
  };
  std::map<std::string, std::string> raw;
  std::string config_path;
  bool dump = false;
  std::vector<std::pair<CLI::App*, std::map<std::string, CLI::Option*>>> subs;
  for (const auto& [name, text] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->set_help_flag("--help", "print this help and exit");
    std::map<std::string, CLI::Option*> opts;
    for (const std::string& key : kplane_cli::config_keys()) {
      if (key == "command") continue;
      opts[key] = sub->add_option("--" + key, raw[key], flag_help().at(key));
    }
    sub->add_option("--config", config_path, "file of key = value lines; flags override it");
    sub->add_flag("--dump-config", dump, "print the effective configuration and exit");
    subs.emplace_back(sub, std::move(opts));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  RunConfig rc;
  try {
    for (auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      rc.command = sub->get_name();
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
        std::stringstream text;
        text << in.rdbuf();
        auto entries = kplane_cli::parse_config_text(text.str(), config_path);
        std::erase_if(entries, [&](const kplane_cli::ConfigEntry& e) {
          return e.key == "command" || opts.at(e.key)->count() > 0;
        });
        kplane_cli::apply_entries(rc, entries, config_path);
      }
      for (const auto& [key, opt] : opts) {
        if (opt->count() == 0) continue;
        try {
          kplane_cli::apply_setting(rc, key, raw[key]);
        } catch (const ConfigError& e) {
          throw ConfigError(std::string("--") + key + ": " + e.what());
        }
      }
    }
    if (dump) {
      std::cout << kplane_cli::to_config_text(rc);
      return kExitPass;
    }
    if (rc.command != "verify" && rc.command != "explore") make_field(rc.field, rc.n);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const CallError& e) {
    std::fprintf(stderr, "config error [%s]: %s\n", kp_status_name(e.status), e.message.c_str());
    return kExitUsage;
  }

  try {
    if (rc.command == "verify") return run_verify(rc);
    if (rc.command == "riesz") return run_riesz(rc);
    if (rc.command == "radon") return run_radon(rc);
    if (rc.command == "invert") return run_invert(rc);
    return run_explore(rc);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const CallError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", kp_status_name(e.status), e.message.c_str());
    return e.status == KP_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
