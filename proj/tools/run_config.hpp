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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kplane_cli {

/// Bad configuration value; `what()` names the field and, for values read
/// from a file, the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 2;
  int k = 1;
  std::string field = "gaussian";
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  /// Empty selects the default sequence.
  std::vector<double> s_sequence;
  /// "origin", "lattice3" or explicit "x,y;x,y".
  std::string points = "origin";
  std::string route = "hoelder";
  int grid = 1;
  double h = 0.05;
  /// Empty means the origin.
  std::vector<double> center;
  double rho = 0.5;
  int taylor_order = -1;
  /// 0 selects the automatic radius.
  double truncation = 0.0;
  double tolerance = 1e-9;
  /// 0 selects the default order.
  int sphere_order = 0;
  /// 0 x 0 means no sinogram.
  int angles = 0;
  int offsets = 0;
  double half_width = 3.0;
  int frames = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::vector<int> only;
  std::vector<double> decays{3.0, 2.0, 1.5, 1.25, 1.1, 1.0};
  /// invert: exit 1 when the max abs error exceeds this (0 disables).
  double max_error = 0.0;

  bool operator==(const RunConfig&) const = default;
};

/// Keys accepted in config files, identical to the long flag names.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Throws ConfigError naming the key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses "key = value" lines; blank lines and lines starting with '#' are
/// skipped. Throws ConfigError with the line number.
std::vector<ConfigEntry> parse_config_text(const std::string& text, const std::string& source);

/// Applies entries, reporting the source line on failure.
void apply_entries(RunConfig& cfg, const std::vector<ConfigEntry>& entries,
                   const std::string& source);

/// Every key of the configuration in "key = value" form; parsing the text
/// back yields an equal configuration.
std::string to_config_text(const RunConfig& cfg);

/// Points for the configured dimension: "origin", "lattice3" (3^n points in
/// [-1, 1]^n) or an explicit list.
std::vector<std::vector<double>> resolve_points(const RunConfig& cfg);

/// Decimal text with 17 significant digits.
std::string format_double(double v);

}  // namespace kplane_cli
