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

#include "sivi/solver/problem.hpp"

namespace sivi {

// G(x, xi) = A x + b + xi on the box [-1, 10]^3 with
// A = [[5,2,1],[2,5,0],[1,0,6]], b = [0, -3, -5.5] and known solution
// x* = [0, 0.4, 0.75].
struct Example1Spec {
  Matrix a{{5.0, 2.0, 1.0}, {2.0, 5.0, 0.0}, {1.0, 0.0, 6.0}};
  Vector b_mean{0.0, -3.0, -5.5};
  double box_lo = -1.0;
  double box_hi = 10.0;
  Vector x_star{0.0, 0.4, 0.75};
  Vector x0{0.0, 0.0, 0.0};
  double noise_sigma = 1.0;  // 0 gives the deterministic problem
};

// Verifies A is symmetric positive definite and that H(x*, 1) vanishes
// (ConstructionError otherwise).
SiviProblem build_example1(const Example1Spec& spec = {});

}  // namespace sivi
