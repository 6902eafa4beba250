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

#include "sivi/solver/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/spectral.hpp"

namespace sivi {

double theoretical_rate_bound(int horizon, double eta, double mu, double nu, double delta,
                              double dist0_sq, double xstar_norm) {
  if (horizon < 1) throw DomainError("theoretical_rate_bound: T must be >= 1");
  if (!(delta > 0.0)) throw DomainError("theoretical_rate_bound: delta must be > 0");
  if (!(mu > 0.0) || !(eta > 0.0)) throw DomainError("theoretical_rate_bound: eta, mu must be > 0");
  const double contraction = 1.0 - 1.0 / (2.0 * eta * mu);
  if (!(contraction > 0.0)) {
    throw DomainError("theoretical_rate_bound: requires eta > 1/(2 mu)");
  }
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
  const double numerator = dist0_sq + pi_sq * nu * nu / (eta * eta) +
                           2.0 * nu * xstar_norm * (1.0 + 1.0 / delta) / eta;
  return numerator / (static_cast<double>(horizon) * contraction);
}

double check_one_step_descent(const Trace& trace, double eta, double mu) {
  const double contraction = 1.0 - 1.0 / (2.0 * eta * mu);
  if (!(mu > 0.0) || !(contraction > 0.0)) {
    throw DomainError("check_one_step_descent: requires eta > 1/(2 mu)");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const TraceRecord& cur = trace.records[i];
    const TraceRecord& next = trace.records[i + 1];
    if (!cur.err || !next.err) {
      throw UnsupportedError("check_one_step_descent: trace has no distance to x*");
    }
    if (next.k != cur.k + 1) continue;
    const double lhs = (*next.err) * (*next.err);
    const double rhs = (*cur.err) * (*cur.err) - contraction * cur.gap_norm * cur.gap_norm;
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

double estimate_cocoercivity_linear(const Matrix& a) {
  if (!is_symmetric(a)) {
    throw DimensionError("estimate_cocoercivity_linear: matrix must be square and symmetric");
  }
  if (!is_positive_semidefinite(a)) {
    throw DomainError("estimate_cocoercivity_linear: matrix is not positive semidefinite");
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < a.rows(); ++i) scale = std::max(scale, std::abs(a(i, i)));
  const double lambda = largest_eigenvalue(a, 1e-12 * scale).value;
  if (!(lambda > 0.0)) {
    throw DomainError("estimate_cocoercivity_linear: zero matrix has no finite modulus");
  }
  return 1.0 / lambda;
}

double sampled_ivi_residual(const Vector& x, const Vector& f_of_x, const FeasibleSet& set,
                            int samples, RngStream& rng) {
  double worst = std::numeric_limits<double>::infinity();
  const double base = dot(f_of_x, x);
  for (int s = 0; s < samples; ++s) {
    const Vector y = set.sample_point(rng);
    worst = std::min(worst, dot(y, x) - base);
  }
  return worst;
}

}  // namespace sivi
