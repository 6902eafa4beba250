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

#include <cstdint>
#include <memory>
#include <optional>

#include "sivi/oracle/oracle.hpp"
#include "sivi/problems/affine_vi.hpp"
#include "sivi/solver/problem.hpp"

namespace sivi {

// Sign of the demand-price slope. kStandard: h(a) = rho0 - diag(rho) B a,
// price falls as shipments grow, and the inner operator is monotone.
// kLiteral: h(a) = rho0 + diag(rho) B a, which makes the inner operator
// indefinite; kept so the failure can be reproduced.
enum class DemandPriceSign { kStandard, kLiteral };

// How the control x = [x1; x2] enters the equilibrium. kIncentive lowers the
// route costs (r = r0 - A^T x1 - B^T x2), which makes x -> [A a*; B a*]
// co-coercive. kTax raises them (r = r0 + A^T x1 + B^T x2), under which the
// response is anti-monotone and the outer iteration does not converge.
enum class ControlConvention { kIncentive, kTax };

struct NetworkOptions {
  std::size_t supply_markets = 10;
  std::size_t demand_markets = 30;
  std::size_t halfspaces = 2;
  DemandPriceSign demand_sign = DemandPriceSign::kStandard;
  ControlConvention control = ControlConvention::kIncentive;
  std::optional<Vector> alpha;  // base supply taxes, default 0
  std::optional<Vector> beta;   // base demand taxes, default 0
  double noise_sigma = 1.0;
  AffineViOptions inner;
};

// Spatial price equilibrium network with m supply and n demand markets.
// Shipments a are ordered supply-major: a[j * n + i] ships from supply j to
// demand i.
struct NetworkModel {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t q = 0;
  DemandPriceSign demand_sign = DemandPriceSign::kStandard;
  ControlConvention control = ControlConvention::kIncentive;

  Matrix supply_agg;  // A: m x mn, row j sums supply j's shipments
  Matrix demand_agg;  // B: n x mn, [I_n, ..., I_n]

  Vector c, tau;        // transaction cost l(a) = diag(c) a + tau
  Vector a_coef, a0;    // supply price g = diag(a_coef) A a + a0
  Vector rho, rho0;     // demand price, sign per demand_sign
  Vector alpha, beta;   // base taxes
  Matrix l;             // q x (m + n)
  Vector b;             // q
  Vector f_min, f_max;  // bounds on x-space of size m + n

  Matrix inner_matrix;  // M
  Vector inner_offset0;  // r at x = 0
  double inner_step = 0.0;  // 1 / lambda_max(M); 0 when M is not PSD
  bool inner_psd = false;

  // Draws c, tau, a_coef, a0, rho, rho0 (in this order) uniformly from
  // [0.1,0.2], [1,2], [1,2], [270,370], [1,2], [620,720], then L entries
  // from U[0,1], all from RngStream(seed, kModelStream); sets
  // b = L f_min + (L (f_max - f_min)) / 2.
  static NetworkModel generate(std::uint64_t seed, const NetworkOptions& options = {});
  static constexpr std::uint64_t kModelStream = 0x4d4f44454cULL;

  std::size_t shipments() const { return m * n; }
  std::size_t control_dimension() const { return m + n; }

  // r(x) for control x = [x1; x2].
  Vector inner_offset(const Vector& x) const;
  // [A a; B a]
  Vector response(const Vector& a) const;
};

// a*(x): solution of the inner affine VI for control x. Throws
// ConstructionError when the model's M is not positive semidefinite and
// IterationLimitError when the solver does not converge.
InnerViSolution inner_equilibrium_solve(const NetworkModel& model, const Vector& x, double tol,
                                        int max_iter,
                                        const std::optional<Vector>& warm_start = std::nullopt);

// x -> [A a*(x); B a*(x)]. Memoises the last evaluation and warm-starts each
// inner solve from the previous a*; both caches are per instance.
class NetworkResponseMap final : public MeanMap {
 public:
  NetworkResponseMap(std::shared_ptr<const NetworkModel> model, AffineViOptions inner);

  std::size_t input_dimension() const override { return model_->control_dimension(); }
  std::size_t output_dimension() const override { return model_->control_dimension(); }
  Vector evaluate(const Vector& x) const override;
  std::unique_ptr<MeanMap> clone() const override;

  std::int64_t inner_solves() const { return inner_solves_; }

 private:
  std::shared_ptr<const NetworkModel> model_;
  AffineViOptions inner_;
  mutable std::optional<Vector> last_x_;
  mutable Vector last_value_;
  mutable std::optional<Vector> warm_;
  mutable std::int64_t inner_solves_ = 0;
};

struct Example2 {
  SiviProblem problem;
  std::shared_ptr<const NetworkModel> model;
};

// Network equilibrium control problem: G(x, xi) = [A a*(x) + xi1; B a*(x) + xi2]
// over X = {x : Lx <= b, f_min <= x <= f_max}, started at x0 = 0.
Example2 build_example2(std::uint64_t seed, const NetworkOptions& options = {});

}  // namespace sivi
