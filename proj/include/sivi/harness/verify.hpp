// Copyright 2026 The SIVI Authors
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
#include <iosfwd>
#include <string>
#include <vector>

namespace sivi {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int projection_pairs = 1000;
};

// Runs the invariant suites (projection, gap, descent, variance decay,
// inner solver, kernel equivalence) and returns one result per check.
std::vector<CheckResult> run_invariant_suites(const VerifyOptions& options);

// Prints "[PASS] name: detail" / "[FAIL] ..." lines; returns the failure count.
int report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace sivi
