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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sivi/feasible/feasible.hpp"
#include "sivi/oracle/oracle.hpp"

namespace sivi {

// Find x* with F(x*) in X and <y - F(x*), x*> >= 0 for all y in X, where F
// is reachable only through the oracle.
struct SiviProblem {
  std::string name;
  std::shared_ptr<const StochasticOracle> oracle;
  FeasibleSet set;
  Vector x0;
  std::optional<Vector> x_star;
  // Non-fatal construction notes (e.g. x0 outside X).
  std::vector<std::string> warnings;

  std::size_t dimension() const { return x0.size(); }
};

// Checks dimensions and finiteness, and records a warning when x0 lies
// outside X: iterates are never projected, only oracle values are, so the
// start point need not be feasible.
SiviProblem make_problem(std::string name, std::shared_ptr<const StochasticOracle> oracle,
                         FeasibleSet set, Vector x0, std::optional<Vector> x_star = std::nullopt);

}  // namespace sivi
