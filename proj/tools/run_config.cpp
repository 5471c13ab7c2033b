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


#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace kplane_cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& what) {
  throw ConfigError("field '" + key + "': " + what + " (got '" + value + "')");
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    bad(key, text, "expected a number");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) bad(key, text, "expected an integer");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < -1000000000LL || v > 1000000000LL) bad(key, text, "integer out of range");
  return static_cast<int>(v);
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(to_double(key, part));
  if (out.empty()) bad(key, text, "expected a comma-separated list of numbers");
  return out;
}

double positive(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (!(v > 0.0)) bad(key, text, "must be positive");
  return v;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_double(xs[i]);
  return s;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeySpec {
  std::string key;
  Setter set;
  Getter get;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs{
      {"command",
       [](RunConfig& c, const std::string& v) {
         if (v != "verify" && v != "riesz" && v != "radon" && v != "invert" && v != "explore") {
           bad("command", v, "expected verify, riesz, radon, invert or explore");
         }
         c.command = v;
       },
       [](const RunConfig& c) { return c.command; }},
      {"dim",
       [](RunConfig& c, const std::string& v) {
         const auto parts = split(v, ',');
         if (parts.empty() || parts.size() > 2) bad("dim", v, "expected n or n,k");
         const int n = to_int("dim", parts[0]);
         const int k = parts.size() == 2 ? to_int("dim", parts[1]) : 1;
         if (n < 2 || k < 1 || k > n - 1) bad("dim", v, "need n >= 2 and 1 <= k <= n-1");
         c.n = n;
         c.k = k;
       },
       [](const RunConfig& c) { return std::to_string(c.n) + "," + std::to_string(c.k); }},
      {"field",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) bad("field", v, "must not be empty");
         c.field = v;
       },
       [](const RunConfig& c) { return c.field; }},
      {"alpha",
       [](RunConfig& c, const std::string& v) {
         const auto xs = to_doubles("alpha", v);
         if (xs.size() > 2) bad("alpha", v, "expected re or re,im");
         c.alpha_re = xs[0];
         c.alpha_im = xs.size() == 2 ? xs[1] : 0.0;
       },
       [](const RunConfig& c) {
         return format_double(c.alpha_re) + "," + format_double(c.alpha_im);
       }},
      {"s-sequence",
       [](RunConfig& c, const std::string& v) {
         c.s_sequence = v == "default" ? std::vector<double>{} : to_doubles("s-sequence", v);
       },
       [](const RunConfig& c) {
         return c.s_sequence.empty() ? std::string("default") : join(c.s_sequence);
       }},
      {"points",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) bad("points", v, "must not be empty");
         if (v != "origin" && v != "lattice3") {
           for (const std::string& p : split(v, ';')) to_doubles("points", p);
         }
         c.points = v;
       },
       [](const RunConfig& c) { return c.points; }},
      {"route",
       [](RunConfig& c, const std::string& v) {
         if (v != "hoelder" && v != "limit" && v != "laplacian") {
           bad("route", v, "expected hoelder, limit or laplacian");
         }
         c.route = v;
       },
       [](const RunConfig& c) { return c.route; }},
      {"grid",
       [](RunConfig& c, const std::string& v) {
         c.grid = to_int("grid", v);
         if (c.grid < 1) bad("grid", v, "must be at least 1");
       },
       [](const RunConfig& c) { return std::to_string(c.grid); }},
      {"h", [](RunConfig& c, const std::string& v) { c.h = positive("h", v); },
       [](const RunConfig& c) { return format_double(c.h); }},
      {"center",
       [](RunConfig& c, const std::string& v) {
         c.center = v == "origin" ? std::vector<double>{} : to_doubles("center", v);
       },
       [](const RunConfig& c) {
         return c.center.empty() ? std::string("origin") : join(c.center);
       }},
      {"rho",
       [](RunConfig& c, const std::string& v) {
         c.rho = to_double("rho", v);
         if (!(c.rho > 0.0 && c.rho < 1.0)) bad("rho", v, "must lie in (0, 1)");
       },
       [](const RunConfig& c) { return format_double(c.rho); }},
      {"taylor-order",
       [](RunConfig& c, const std::string& v) {
         c.taylor_order = v == "auto" ? -1 : to_int("taylor-order", v);
         if (c.taylor_order < -1) bad("taylor-order", v, "must be auto or >= 0");
       },
       [](const RunConfig& c) {
         return c.taylor_order < 0 ? std::string("auto") : std::to_string(c.taylor_order);
       }},
      {"truncation",
       [](RunConfig& c, const std::string& v) {
         c.truncation = v == "auto" ? 0.0 : to_double("truncation", v);
         if (v != "auto" && !(c.truncation >= 1.0)) bad("truncation", v, "must be auto or >= 1");
       },
       [](const RunConfig& c) {
         return c.truncation > 0.0 ? format_double(c.truncation) : std::string("auto");
       }},
      {"tolerance", [](RunConfig& c, const std::string& v) { c.tolerance = positive("tolerance", v); },
       [](const RunConfig& c) { return format_double(c.tolerance); }},
      {"sphere-order",
       [](RunConfig& c, const std::string& v) {
         c.sphere_order = v == "auto" ? 0 : to_int("sphere-order", v);
         if (v != "auto" && c.sphere_order < 1) bad("sphere-order", v, "must be auto or >= 1");
       },
       [](const RunConfig& c) {
         return c.sphere_order > 0 ? std::to_string(c.sphere_order) : std::string("auto");
       }},
      {"sinogram",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") {
           c.angles = c.offsets = 0;
           return;
         }
         const auto parts = split(v, 'x');
         if (parts.size() != 2) bad("sinogram", v, "expected AxB");
         c.angles = to_int("sinogram", parts[0]);
         c.offsets = to_int("sinogram", parts[1]);
         if (c.angles < 1 || c.offsets < 1) bad("sinogram", v, "sizes must be positive");
       },
       [](const RunConfig& c) {
         return c.angles > 0 ? std::to_string(c.angles) + "x" + std::to_string(c.offsets)
                             : std::string("none");
       }},
      {"half-width",
       [](RunConfig& c, const std::string& v) { c.half_width = positive("half-width", v); },
       [](const RunConfig& c) { return format_double(c.half_width); }},
      {"frames",
       [](RunConfig& c, const std::string& v) {
         c.frames = to_int("frames", v);
         if (c.frames < 0) bad("frames", v, "must be >= 0");
       },
       [](const RunConfig& c) { return std::to_string(c.frames); }},
      {"seed",
       [](RunConfig& c, const std::string& v) {
         std::uint64_t s = 0;
         const char* end = v.data() + v.size();
         const auto [ptr, ec] = std::from_chars(v.data(), end, s);
         if (v.empty() || ec != std::errc() || ptr != end) bad("seed", v, "expected an unsigned integer");
         c.seed = s;
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = v; },
       [](const RunConfig& c) { return c.output; }},
      {"only",
       [](RunConfig& c, const std::string& v) {
         c.only.clear();
         if (v == "all") return;
         for (const std::string& p : split(v, ',')) c.only.push_back(to_int("only", p));
         if (c.only.empty()) bad("only", v, "expected all or a list of criteria");
       },
       [](const RunConfig& c) {
         if (c.only.empty()) return std::string("all");
         std::string s;
         for (std::size_t i = 0; i < c.only.size(); ++i) s += (i ? "," : "") + std::to_string(c.only[i]);
         return s;
       }},
      {"decays",
       [](RunConfig& c, const std::string& v) {
         c.decays = to_doubles("decays", v);
         for (double a : c.decays) {
           if (!(a > 0.0)) bad("decays", v, "exponents must be positive");
         }
       },
       [](const RunConfig& c) { return join(c.decays); }},
      {"max-error",
       [](RunConfig& c, const std::string& v) {
         c.max_error = to_double("max-error", v);
         if (c.max_error < 0.0) bad("max-error", v, "must be >= 0");
       },
       [](const RunConfig& c) { return format_double(c.max_error); }},
  };
  return specs;
}

const KeySpec* find_spec(const std::string& key) {
  for (const KeySpec& s : key_specs()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const KeySpec& s : key_specs()) k.push_back(s.key);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const KeySpec* spec = find_spec(key);
  if (spec == nullptr) throw ConfigError("unknown key '" + key + "'");
  spec->set(cfg, value);
}

std::vector<ConfigEntry> parse_config_text(const std::string& text, const std::string& source) {
  std::vector<ConfigEntry> entries;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    const std::string where = source + ":" + std::to_string(line) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    ConfigEntry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (find_spec(e.key) == nullptr) throw ConfigError(where + "unknown key '" + e.key + "'");
    if (auto it = seen.find(e.key); it != seen.end()) {
      throw ConfigError(where + "key '" + e.key + "' already set on line " +
                        std::to_string(it->second));
    }
    seen[e.key] = line;
    entries.push_back(std::move(e));
  }
  return entries;
}

void apply_entries(RunConfig& cfg, const std::vector<ConfigEntry>& entries,
                   const std::string& source) {
  for (const ConfigEntry& e : entries) {
    try {
      apply_setting(cfg, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(source + ":" + std::to_string(e.line) + ": " + err.what());
    }
  }
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  for (const KeySpec& s : key_specs()) out += s.key + " = " + s.get(cfg) + "\n";
  return out;
}

std::vector<std::vector<double>> resolve_points(const RunConfig& cfg) {
  std::vector<std::vector<double>> pts;
  if (cfg.points == "origin") {
    pts.emplace_back(cfg.n, 0.0);
  } else if (cfg.points == "lattice3") {
    std::vector<int> idx(cfg.n, -1);
    while (true) {
      std::vector<double> p(idx.begin(), idx.end());
      pts.push_back(std::move(p));
      int d = cfg.n - 1;
      while (d >= 0 && idx[d] == 1) idx[d--] = -1;
      if (d < 0) break;
      ++idx[d];
    }
  } else {
    for (const std::string& part : split(cfg.points, ';')) {
      std::vector<double> p = to_doubles("points", part);
      if (static_cast<int>(p.size()) != cfg.n) {
        bad("points", part, "point has " + std::to_string(p.size()) + " coordinates, n = " +
                                std::to_string(cfg.n));
      }
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

}  // namespace kplane_cli
