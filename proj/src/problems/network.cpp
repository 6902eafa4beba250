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

#include "sivi/problems/network.hpp"

#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/rng.hpp"
#include "sivi/numkit/spectral.hpp"

namespace sivi {
namespace {

Vector draw_uniform(RngStream& rng, std::size_t count, double lo, double hi) {
  Vector v(count);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

Vector defaulted(const std::optional<Vector>& v, std::size_t size, const char* what) {
  if (!v) return Vector(size, 0.0);
  if (v->size() != size) throw DimensionError(std::string("network: ") + what + " has wrong size");
  return *v;
}

}  // namespace

NetworkModel NetworkModel::generate(std::uint64_t seed, const NetworkOptions& options) {
  NetworkModel model;
  model.seed = seed;
  model.m = options.supply_markets;
  model.n = options.demand_markets;
  model.q = options.halfspaces;
  model.demand_sign = options.demand_sign;
  model.control = options.control;
  const std::size_t m = model.m;
  const std::size_t n = model.n;
  const std::size_t mn = m * n;
  if (m == 0 || n == 0) throw ConstructionError("network: market counts must be positive");

  model.supply_agg = Matrix(m, mn);
  model.demand_agg = Matrix(n, mn);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      model.supply_agg(j, j * n + i) = 1.0;
      model.demand_agg(i, j * n + i) = 1.0;
    }
  }

  RngStream rng(seed, kModelStream);
  model.c = draw_uniform(rng, mn, 0.1, 0.2);
  model.tau = draw_uniform(rng, mn, 1.0, 2.0);
  model.a_coef = draw_uniform(rng, m, 1.0, 2.0);
  model.a0 = draw_uniform(rng, m, 270.0, 370.0);
  model.rho = draw_uniform(rng, n, 1.0, 2.0);
  model.rho0 = draw_uniform(rng, n, 620.0, 720.0);
  model.alpha = defaulted(options.alpha, m, "alpha");
  model.beta = defaulted(options.beta, n, "beta");

  model.f_min = concat(Vector(m, 0.0), Vector(n, 20.0));
  model.f_max = concat(Vector(m, 160.0), Vector(n, 60.0));
  model.l = Matrix(model.q, m + n);
  for (std::size_t r = 0; r < model.q; ++r) {
    for (std::size_t col = 0; col < m + n; ++col) model.l(r, col) = rng.uniform(0.0, 1.0);
  }
  model.b = multiply(model.l, model.f_min) + 0.5 * multiply(model.l, model.f_max - model.f_min);

  // M = diag(c) + A^T diag(a_coef) A +- B^T diag(rho) B, filled entrywise:
  // (A^T D A) couples shipments from the same supply market, (B^T D B)
  // shipments into the same demand market.
  const double demand_slope = options.demand_sign == DemandPriceSign::kStandard ? 1.0 : -1.0;
  model.inner_matrix = Matrix(mn, mn);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = j * n + i;
      model.inner_matrix(row, row) += model.c[row];
      for (std::size_t i2 = 0; i2 < n; ++i2) model.inner_matrix(row, j * n + i2) += model.a_coef[j];
      for (std::size_t j2 = 0; j2 < m; ++j2) {
        model.inner_matrix(row, j2 * n + i) += demand_slope * model.rho[i];
      }
    }
  }
  model.inner_offset0 = model.tau + transpose_multiply(model.supply_agg, model.a0 + model.alpha) -
                        transpose_multiply(model.demand_agg, model.rho0 - model.beta);

  model.inner_psd = is_positive_semidefinite(model.inner_matrix);
  if (model.inner_psd) model.inner_step = affine_vi_step(model.inner_matrix);
  return model;
}

Vector NetworkModel::inner_offset(const Vector& x) const {
  if (x.size() != m + n) throw DimensionError("network: control has wrong dimension");
  const double s = control == ControlConvention::kTax ? 1.0 : -1.0;
  Vector x1(std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m)));
  Vector x2(std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(m), x.end()));
  Vector r = inner_offset0;
  axpy(s, transpose_multiply(supply_agg, x1), r);
  axpy(s, transpose_multiply(demand_agg, x2), r);
  return r;
}

Vector NetworkModel::response(const Vector& a) const {
  return concat(multiply(supply_agg, a), multiply(demand_agg, a));
}

InnerViSolution inner_equilibrium_solve(const NetworkModel& model, const Vector& x, double tol,
                                        int max_iter, const std::optional<Vector>& warm_start) {
  if (!model.inner_psd) {
    throw ConstructionError("network: inner operator M is not positive semidefinite");
  }
  return solve_affine_vi_orthant(model.inner_matrix, model.inner_offset(x), model.inner_step,
                                 AffineViOptions{tol, max_iter}, warm_start);
}

NetworkResponseMap::NetworkResponseMap(std::shared_ptr<const NetworkModel> model,
                                       AffineViOptions inner)
    : model_(std::move(model)), inner_(inner) {}

Vector NetworkResponseMap::evaluate(const Vector& x) const {
  if (last_x_ && *last_x_ == x) return last_value_;
  InnerViSolution sol = inner_equilibrium_solve(*model_, x, inner_.tol, inner_.max_iter, warm_);
  ++inner_solves_;
  last_value_ = model_->response(sol.a_star);
  last_x_ = x;
  warm_ = std::move(sol.a_star);
  return last_value_;
}

std::unique_ptr<MeanMap> NetworkResponseMap::clone() const {
  return std::make_unique<NetworkResponseMap>(*this);
}

Example2 build_example2(std::uint64_t seed, const NetworkOptions& options) {
  auto model = std::make_shared<const NetworkModel>(NetworkModel::generate(seed, options));
  if (!model->inner_psd) {
    throw ConstructionError(
        "example2: inner operator M is not positive semidefinite (demand price sign "
        "'literal' makes the equilibrium VI non-monotone)");
  }
  const std::size_t dim = model->control_dimension();
  PolyhedronSet poly(BoxSet(model->f_min, model->f_max), model->l, model->b);
  auto oracle = std::make_shared<AdditiveNoiseOracle>(
      std::make_unique<NetworkResponseMap>(model, options.inner), options.noise_sigma);
  SiviProblem problem = make_problem("example2", std::move(oracle), FeasibleSet(std::move(poly)),
                                     Vector(dim, 0.0));
  return Example2{std::move(problem), std::move(model)};
}

}  // namespace sivi
