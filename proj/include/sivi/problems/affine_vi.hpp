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

#include <optional>

#include "sivi/numkit/linalg.hpp"

namespace sivi {

struct InnerViSolution {
  Vector a_star;
  double residual = 0.0;  // ||a - max(a - Phi(a), 0)||
  int iterations = 0;
};

struct AffineViOptions {
  double tol = 1e-9;
  int max_iter = 1000000;
  // Nesterov momentum with restart; false gives plain projected gradient.
  bool accelerated = true;
};

// Solves the affine VI over the nonnegative orthant, <a' - a, M a + r> >= 0
// for all a' >= 0 (equivalently the LCP a >= 0, Ma + r >= 0, a.(Ma + r) = 0),
// by projected gradient a <- max(a - gamma (M a + r), 0) from `warm_start`
// (or 0) until the natural-map residual is <= tol. M must be symmetric
// positive semidefinite and gamma in (0, 2 / lambda_max(M)).
InnerViSolution solve_affine_vi_orthant(const Matrix& m, const Vector& r, double gamma,
                                        const AffineViOptions& options = {},
                                        const std::optional<Vector>& warm_start = std::nullopt);

// Step 1 / lambda_max(M).
double affine_vi_step(const Matrix& m);

}  // namespace sivi
