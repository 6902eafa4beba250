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

#include "sivi/problems/example1.hpp"

#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/spectral.hpp"
#include "sivi/solver/solver.hpp"

namespace sivi {

SiviProblem build_example1(const Example1Spec& spec) {
  if (!is_symmetric(spec.a) || !is_positive_semidefinite(spec.a, 0.0)) {
    throw ConstructionError("example1: A must be symmetric positive definite");
  }
  const FeasibleSet set = BoxSet::uniform(spec.a.rows(), spec.box_lo, spec.box_hi);
  auto map = std::make_unique<AffineMap>(spec.a, spec.b_mean);
  const double residual = gap(spec.x_star, 1.0, map->evaluate(spec.x_star), set).norm;
  if (residual > 1e-12) {
    throw ConstructionError("example1: x* is not a solution (gap " + std::to_string(residual) + ")");
  }
  auto oracle = std::make_shared<AdditiveNoiseOracle>(std::move(map), spec.noise_sigma);
  return make_problem("example1", std::move(oracle), set, spec.x0, spec.x_star);
}

}  // namespace sivi
