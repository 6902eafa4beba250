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

#include "sivi/feasible/feasible.hpp"
#include "sivi/numkit/linalg.hpp"
#include "sivi/numkit/rng.hpp"
#include "sivi/solver/solver.hpp"

namespace sivi {

// Upper bound on min_{k<T} E||H(x_k, eta)||^2 under N_k = ceil((k+1)^(2+2 delta)):
//
//   [dist0_sq + pi^2 nu^2 / eta^2 + 2 nu ||x*|| (1 + 1/delta) / eta]
//   / (T (1 - 1/(2 eta mu)))
//
// Requires eta > 1/(2 mu) strictly (DomainError otherwise).
double theoretical_rate_bound(int horizon, double eta, double mu, double nu, double delta,
                              double dist0_sq, double xstar_norm);

// Largest value over consecutive records k, k+1 of
//   ||x_{k+1} - x*||^2 - ||x_k - x*||^2 + (1 - 1/(2 eta mu)) ||H(x_k, eta)||^2,
// which is <= 0 for noise-free runs with a valid co-coercivity modulus mu.
// Throws UnsupportedError when the trace has no errors to x*, DomainError
// when eta <= 1/(2 mu).
double check_one_step_descent(const Trace& trace, double eta, double mu);

// 1 / lambda_max(A) for symmetric positive semidefinite A: a co-coercivity
// modulus of x -> A x + b because <Av, v> >= ||Av||^2 / lambda_max.
double estimate_cocoercivity_linear(const Matrix& a);

// min over `samples` points y of X of <y - F(x), x>. Nonnegative (up to
// sampling) exactly when x solves the inverse VI and F(x) is in X.
double sampled_ivi_residual(const Vector& x, const Vector& f_of_x, const FeasibleSet& set,
                            int samples, RngStream& rng);

}  // namespace sivi
