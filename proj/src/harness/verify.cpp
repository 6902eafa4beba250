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

#include "sivi/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "sivi/harness/csv.hpp"
#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"
#include "sivi/problems/example1.hpp"
#include "sivi/problems/network.hpp"
#include "sivi/solver/diagnostics.hpp"

namespace sivi {
namespace {

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// Nonexpansiveness and the obtuse-angle inequality for P_X on random pairs.
CheckResult projection_check(const std::string& name, const FeasibleSet& set, double radius,
                             int pairs, RngStream& rng) {
  const std::size_t n = set.dimension();
  double worst_expand = 0.0;
  double worst_angle = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vector u(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = rng.uniform(-radius, radius);
      v[j] = rng.uniform(-radius, radius);
    }
    const Vector pu = set.project(u);
    const Vector pv = set.project(v);
    worst_expand = std::max(worst_expand, distance(pu, pv) - distance(u, v));
    // <u - P(u), y - P(u)> <= 0 for y = P(v) in X
    worst_angle = std::max(worst_angle, dot(u - pu, pv - pu));
  }
  const bool ok = worst_expand <= 1e-9 && worst_angle <= 1e-9;
  return {name, ok, "max expansion " + sci(worst_expand) + ", max angle " + sci(worst_angle)};
}

}  // namespace

std::vector<CheckResult> run_invariant_suites(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  RngStream rng(options.seed, 0x5645524946ULL);

  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      results.push_back(body());
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  const SiviProblem ex1 = build_example1();
  Example1Spec det_spec;
  det_spec.noise_sigma = 0.0;
  const SiviProblem ex1_det = build_example1(det_spec);

  guarded("projection/box", [&] {
    return projection_check("projection/box", ex1.set, 20.0, options.projection_pairs, rng);
  });

  guarded("projection/polyhedron", [&] {
    const Example2 ex2 = build_example2(options.seed);
    return projection_check("projection/polyhedron", ex2.problem.set, 200.0,
                            options.projection_pairs, rng);
  });

  guarded("gap/zero-at-solution", [&] {
    const Vector fx = ex1.oracle->exact_mean(*ex1.x_star);
    double worst = 0.0;
    for (double eta : {0.5, 1.0, 4.0, 10.0}) worst = std::max(worst, gap(*ex1.x_star, eta, fx, ex1.set).norm);
    return CheckResult{"gap/zero-at-solution", worst <= 1e-12, "max |H(x*)| " + sci(worst)};
  });

  guarded("solver/one-step-descent", [&] {
    SolverConfig config;
    config.eta = 4.0;
    config.horizon = 300;
    const Trace trace = solve(ex1_det, config);
    const auto& a = dynamic_cast<const AffineMap&>(
        dynamic_cast<const AdditiveNoiseOracle&>(*ex1_det.oracle).map());
    const double mu = estimate_cocoercivity_linear(a.matrix());
    const double worst = check_one_step_descent(trace, config.eta, mu);
    const double d0 = distance(ex1_det.x0, *ex1_det.x_star);
    const double tol = 1e-10 * (1.0 + d0 * d0);
    return CheckResult{"solver/one-step-descent", worst <= tol,
                       "max violation " + sci(worst) + " (tol " + sci(tol) + ")"};
  });

  guarded("oracle/variance-decay", [&] {
    RngStream vr = rng.fork(1);
    const VarianceDecayFit fit =
        verify_variance_decay(*ex1.oracle, ex1.x0, {10, 100, 1000, 10000}, 100, vr);
    const bool ok = !fit.degenerate && fit.slope >= -1.15 && fit.slope <= -0.85;
    return CheckResult{"oracle/variance-decay", ok, "slope " + sci(fit.slope)};
  });

  guarded("inner/complementarity", [&] {
    const Example2 ex2 = build_example2(options.seed);
    const NetworkModel& model = *ex2.model;
    Vector x(model.control_dimension());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0, 5.0);
    const InnerViSolution sol = inner_equilibrium_solve(model, x, 1e-9, 1000000);
    const Vector r = model.inner_offset(x);
    const Vector phi = multiply(model.inner_matrix, sol.a_star) + r;
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      worst = std::max({worst, -sol.a_star[i], -phi[i], std::abs(sol.a_star[i] * phi[i])});
    }
    const double scale = 1.0 + max_abs(r);
    return CheckResult{"inner/complementarity", worst <= 1e-6 * scale,
                       "residual " + sci(worst) + " (scale " + sci(scale) + ")"};
  });

  guarded("simd/equivalence", [&] {
    const simd::KernelTable& scalar = simd::scalar_kernels();
    double worst = 0.0;
    for (const simd::KernelTable* table : simd::available()) {
      for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 17u, 64u, 301u}) {
        std::vector<double> a(n), b(n), o1(n), o2(n);
        for (std::size_t i = 0; i < n; ++i) {
          a[i] = rng.uniform(-3, 3);
          b[i] = rng.uniform(-3, 3);
        }
        const double d1 = scalar.dot(a.data(), b.data(), n);
        const double d2 = table->dot(a.data(), b.data(), n);
        worst = std::max(worst, std::abs(d1 - d2) / (1.0 + std::abs(d1)));
        const double s1 = scalar.orthant_step(a.data(), b.data(), 0.3, o1.data(), n);
        const double s2 = table->orthant_step(a.data(), b.data(), 0.3, o2.data(), n);
        worst = std::max(worst, std::abs(s1 - s2) / (1.0 + s1));
        if (o1 != o2) worst = std::max(worst, 1.0);
      }
    }
    return CheckResult{"simd/equivalence", worst <= 1e-12,
                       std::string("backend ") + simd::active().name + ", max rel diff " + sci(worst)};
  });

  return results;
}

int report(const std::vector<CheckResult>& results, std::ostream& out) {
  int failures = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    if (!r.passed) ++failures;
  }
  return failures;
}

}  // namespace sivi
