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

#include "sivi/problems/affine_vi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"
#include "sivi/numkit/spectral.hpp"

namespace sivi {

double affine_vi_step(const Matrix& m) {
  double scale = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) scale = std::max(scale, std::abs(m(i, i)));
  const double lambda = largest_eigenvalue(m, 1e-8 * scale).value;
  if (!(lambda > 0.0)) throw DomainError("affine VI operator has no positive eigenvalue");
  return 1.0 / lambda;
}

InnerViSolution solve_affine_vi_orthant(const Matrix& m, const Vector& r, double gamma,
                                        const AffineViOptions& options,
                                        const std::optional<Vector>& warm_start) {
  const std::size_t n = r.size();
  if (!m.square() || m.rows() != n) throw DimensionError("affine VI: M and r sizes differ");
  if (!(gamma > 0.0)) throw DomainError("affine VI: step must be > 0");

  Vector a(n, 0.0);
  if (warm_start) {
    if (warm_start->size() != n) throw DimensionError("affine VI: warm start size");
    for (std::size_t i = 0; i < n; ++i) a[i] = std::max((*warm_start)[i], 0.0);
  }
  // Projected gradient, optionally with Nesterov momentum and gradient-based
  // restart. The natural-map residual is checked at a every few steps.
  const int check_every = options.accelerated ? 8 : 1;
  Vector a_prev = a;
  Vector y(n), phi(n), next(n), scratch(n);
  double t = 1.0;
  double residual = 0.0;
  for (int it = 0; it <= options.max_iter; ++it) {
    if (it % check_every == 0) {
      simd::gemv(m.flat(), n, n, a.span(), phi.span());
      simd::axpy(1.0, r.span(), phi.span());
      residual = std::sqrt(simd::orthant_step(a.span(), phi.span(), gamma, scratch.span()));
      if (!std::isfinite(residual)) throw NumericError("affine VI: residual is not finite", it);
      if (residual <= options.tol) return InnerViSolution{std::move(a), residual, it};
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = options.accelerated ? (t - 1.0) / t_next : 0.0;
    simd::axpby(1.0 + beta, a.span(), -beta, a_prev.span(), y.span());
    simd::gemv(m.flat(), n, n, y.span(), phi.span());
    simd::axpy(1.0, r.span(), phi.span());
    simd::orthant_step(y.span(), phi.span(), gamma, next.span());
    // restart when the step opposes the momentum direction
    double align = 0.0;
    for (std::size_t i = 0; i < n; ++i) align += (y[i] - next[i]) * (next[i] - a[i]);
    t = align > 0.0 ? 1.0 : t_next;
    std::swap(a_prev, a);
    std::swap(a, next);
  }
  throw IterationLimitError("affine VI: projected gradient did not converge in " +
                                std::to_string(options.max_iter) + " iterations",
                            residual);
}

}  // namespace sivi
