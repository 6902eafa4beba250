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

#include "sivi/numkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"

namespace sivi {
namespace {

void require_symmetric(const Matrix& m) {
  const double asym = asymmetry(m);  // throws when not square
  if (asym > 1e-10) {
    throw DimensionError("matrix is not symmetric (relative asymmetry " +
                         std::to_string(asym) + ")");
  }
}

}  // namespace

EigenEstimate largest_eigenvalue(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw DomainError("largest_eigenvalue: tol must be positive");
  require_symmetric(m);
  const std::size_t n = m.rows();
  if (n == 0) throw DimensionError("largest_eigenvalue: empty matrix");

  double gersh_lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) off += std::abs(m(i, j));
    }
    gersh_lo = std::min(gersh_lo, m(i, i) - off);
  }
  const double shift = -gersh_lo;

  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const int max_iter = static_cast<int>(200 * n);
  double residual = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector mv = multiply(m, v);
    const double lambda = dot(v, mv);
    residual = norm(axpby(1.0, mv, -lambda, v));
    if (residual <= tol) return EigenEstimate{lambda, std::move(v), it};
    axpy(shift, v, mv);
    const double len = norm(mv);
    if (len == 0.0) {
      // Start vector in the null space of M + sI: only possible for M = -sI.
      return EigenEstimate{lambda, std::move(v), it};
    }
    v = (1.0 / len) * mv;
  }
  throw IterationLimitError("largest_eigenvalue: power iteration did not converge in " +
                                std::to_string(max_iter) + " iterations",
                            residual);
}

bool is_positive_semidefinite(const Matrix& m, double rel_shift) {
  require_symmetric(m);
  const std::size_t n = m.rows();
  double diag_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(m(i, i)));
  const double shift = rel_shift * diag_scale;

  // Lower-triangular factor, row by row.
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m(i, j) + (i == j ? shift : 0.0);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0)) return false;
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return true;
}

}  // namespace sivi
