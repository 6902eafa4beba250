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

#include "sivi/numkit/linalg.hpp"

namespace sivi {

struct EigenEstimate {
  double value = 0.0;
  Vector vector;  // unit norm
  int iterations = 0;
};

// Largest eigenvalue of a symmetric matrix by power iteration from the fixed
// start e/sqrt(n). When Gershgorin discs reach below zero the iteration runs
// on M + sI so the dominant eigenvalue is the largest one, not the largest
// in magnitude. Stops once ||Mv - lambda v|| <= tol; at most 200 n
// iterations, after which IterationLimitError is thrown.
EigenEstimate largest_eigenvalue(const Matrix& m, double tol);

// Cholesky of M + shift * I with shift = rel_shift * max(1, max|M_ii|).
// Throws DimensionError when M is not square or not symmetric.
bool is_positive_semidefinite(const Matrix& m, double rel_shift = 1e-12);

}  // namespace sivi
