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
#include <functional>
#include <string>
#include <vector>

namespace kplane {

/// One measured quantity of an acceptance criterion.
struct Check {
  enum class Relation { kBelow, kAbove, kInside };

  std::string name;
  /// Short description of the identity being reproduced.
  std::string anchor;
  double measured = 0.0;
  /// Upper bound for kBelow, lower bound for kAbove and kInside.
  double bound = 0.0;
  /// Upper end for kInside.
  double upper = 0.0;
  Relation relation = Relation::kBelow;
  bool pass = false;
  /// Set when the computation threw; the check then fails.
  std::string error;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const noexcept;
};

struct SuiteOptions {
  /// Criteria to run (1-based); empty runs all.
  std::vector<int> only;
  std::uint64_t seed = 20260101;
};

inline constexpr int kCriterionCount = 14;

/// Runs the acceptance criteria in order, reporting each result to
/// `on_result` as soon as it is available.
std::vector<CriterionResult> run_acceptance(
    const SuiteOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "measured < bound", "measured > bound" or "lo <= measured <= hi".
std::string describe(const Check& check);

}  // namespace kplane
