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


// One pass/fail line per acceptance criterion; failing checks follow
// their criterion line. Exit status 1 when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "kplane/verify.hpp"

int main(int argc, char** argv) {
  kplane::SuiteOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  double total = 0.0;
  kplane::run_acceptance(options, [&](const kplane::CriterionResult& r) {
    std::size_t ok = 0;
    for (const kplane::Check& c : r.checks) ok += c.pass;
    const bool pass = r.pass();
    failed += !pass;
    total += r.seconds;
    std::printf("criterion %2d: %s  %s (%zu/%zu checks, %.1f s)\n", r.id, pass ? "PASS" : "FAIL",
                r.title.c_str(), ok, r.checks.size(), r.seconds);
    for (const kplane::Check& c : r.checks) {
      if (c.pass) continue;
      std::printf("    failed: %s: %s%s%s\n", c.name.c_str(), kplane::describe(c).c_str(),
                  c.error.empty() ? "" : " error: ", c.error.c_str());
    }
    std::fflush(stdout);
  });
  std::printf("acceptance: %s, %d failing criteria (%.1f s)\n", failed ? "FAIL" : "PASS", failed,
              total);
  return failed ? 1 : 0;
}
