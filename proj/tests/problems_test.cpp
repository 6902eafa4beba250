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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qp_oracles.hpp"
#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/spectral.hpp"
#include "sivi/problems/affine_vi.hpp"
#include "sivi/problems/example1.hpp"
#include "sivi/problems/network.hpp"
#include "sivi/solver/diagnostics.hpp"

namespace sivi {
namespace {

Matrix random_pd(RngStream& rng, std::size_t n, double ridge) {
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  }
  Matrix m = multiply(transpose(r), r);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += ridge;
  return m;
}

TEST(Example1, ExactMeanValues) {
  const SiviProblem p = build_example1();
  EXPECT_EQ(p.oracle->exact_mean(Vector(3)), (Vector{0.0, -3.0, -5.5}));
  EXPECT_LT(max_abs(p.oracle->exact_mean(Vector{0.0, 0.4, 0.75}) - Vector{1.55, -1.0, -1.0}), 1e-15);
  EXPECT_EQ(p.dimension(), 3u);
  EXPECT_TRUE(p.set.is_box());
}

TEST(Example1, NoiseIsAdditiveStandardNormal) {
  const SiviProblem p = build_example1();
  const Vector x{0.0, 0.4, 0.75};
  RngStream a(4, 0), b(4, 0);
  const Vector draw = p.oracle->sample(x, a) - p.oracle->exact_mean(x);
  const Vector z = gaussian_vector(b, 3);
  EXPECT_LT(distance(draw, z), 1e-14);
}

TEST(Example1, RejectsInvalidSpecs) {
  Example1Spec bad;
  bad.a(0, 1) = 3.0;  // asymmetric
  EXPECT_THROW((void)build_example1(bad), ConstructionError);
  Example1Spec wrong_solution;
  wrong_solution.x_star = Vector{0.0, 0.0, 0.0};
  EXPECT_THROW((void)build_example1(wrong_solution), ConstructionError);
}

TEST(AffineVi, IdentityCases) {
  const Matrix id = Matrix::identity(4);
  const double gamma = affine_vi_step(id);
  EXPECT_DOUBLE_EQ(gamma, 1.0);
  const InnerViSolution s1 = solve_affine_vi_orthant(id, Vector(4, -1.0), gamma);
  EXPECT_LT(distance(s1.a_star, Vector::ones(4)), 1e-12);
  const InnerViSolution s2 = solve_affine_vi_orthant(id, Vector(4, 1.0), gamma);
  EXPECT_EQ(s2.a_star, Vector(4));
}

class AffineViEnumeration : public ::testing::TestWithParam<bool> {};

TEST_P(AffineViEnumeration, MatchesActiveSetOracle) {
  AffineViOptions options;
  options.tol = 1e-12;
  options.accelerated = GetParam();
  RngStream rng(55, GetParam() ? 1 : 0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = random_pd(rng, 5, 0.1);
    Vector r(5);
    for (std::size_t i = 0; i < 5; ++i) r[i] = rng.uniform(-2.0, 2.0);
    const InnerViSolution sol = solve_affine_vi_orthant(m, r, affine_vi_step(m), options);
    const auto oracle = testing::enumerate_lcp(m, r, 1e-10);
    ASSERT_TRUE(oracle.has_value());
    worst = std::max(worst, max_abs(sol.a_star - *oracle));
    EXPECT_LE(sol.residual, options.tol);
  }
  EXPECT_LE(worst, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Variants, AffineViEnumeration, ::testing::Values(false, true));

TEST(AffineVi, WarmStartAtSolutionStopsImmediately) {
  RngStream rng(56, 0);
  const Matrix m = random_pd(rng, 6, 0.5);
  const Vector r{1.0, -1.0, 0.5, -2.0, 0.0, 0.3};
  const double gamma = affine_vi_step(m);
  const InnerViSolution cold = solve_affine_vi_orthant(m, r, gamma);
  const InnerViSolution warm = solve_affine_vi_orthant(m, r, gamma, {}, cold.a_star);
  EXPECT_EQ(warm.iterations, 0);
  EXPECT_EQ(warm.a_star, cold.a_star);
}

TEST(AffineVi, IterationLimitCarriesResidual) {
  RngStream rng(57, 0);
  const Matrix m = random_pd(rng, 6, 0.01);
  AffineViOptions options;
  options.max_iter = 2;
  try {
    (void)solve_affine_vi_orthant(m, Vector(6, -5.0), affine_vi_step(m), options);
    FAIL() << "expected IterationLimitError";
  } catch (const IterationLimitError& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Network, BoundsAndStructure) {
  const NetworkModel model = NetworkModel::generate(1);
  EXPECT_EQ(model.f_min, concat(Vector(10, 0.0), Vector(30, 20.0)));
  EXPECT_EQ(model.f_max, concat(Vector(10, 160.0), Vector(30, 60.0)));
  EXPECT_EQ(multiply(model.supply_agg, Vector::ones(300)), Vector(10, 30.0));
  EXPECT_EQ(multiply(model.demand_agg, Vector::ones(300)), Vector(30, 10.0));
  EXPECT_TRUE(model.inner_psd);
  EXPECT_EQ(model.l.rows(), 2u);
  EXPECT_EQ(model.l.cols(), 40u);
}

TEST(Network, ParameterRanges) {
  const NetworkModel model = NetworkModel::generate(12);
  auto within = [](const Vector& v, double lo, double hi) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x >= lo && x <= hi; });
  };
  EXPECT_TRUE(within(model.c, 0.1, 0.2));
  EXPECT_TRUE(within(model.tau, 1.0, 2.0));
  EXPECT_TRUE(within(model.a_coef, 1.0, 2.0));
  EXPECT_TRUE(within(model.a0, 270.0, 370.0));
  EXPECT_TRUE(within(model.rho, 1.0, 2.0));
  EXPECT_TRUE(within(model.rho0, 620.0, 720.0));
  EXPECT_TRUE(within(Vector(std::vector<double>(model.l.flat().begin(), model.l.flat().end())), 0.0, 1.0));
}

TEST(Network, SupplyAggregationSumsShipments) {
  const NetworkModel model = NetworkModel::generate(2);
  RngStream rng(3, 0);
  Vector a(300);
  for (double& v : a) v = rng.uniform(0.0, 10.0);
  const Vector s = multiply(model.supply_agg, a);
  for (std::size_t j = 0; j < 10; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 30; ++i) sum += a[j * 30 + i];
    EXPECT_NEAR(s[j], sum, 1e-12);
  }
}

TEST(Network, InnerMatrixMatchesFactoredForm) {
  const NetworkModel model = NetworkModel::generate(4);
  const Matrix& a = model.supply_agg;
  const Matrix& b = model.demand_agg;
  Matrix expected = Matrix::diagonal(model.c.span());
  const Matrix ada = multiply(transpose(a), multiply(Matrix::diagonal(model.a_coef.span()), a));
  const Matrix bdb = multiply(transpose(b), multiply(Matrix::diagonal(model.rho.span()), b));
  double worst = 0.0;
  for (std::size_t r = 0; r < 300; ++r) {
    for (std::size_t c = 0; c < 300; ++c) {
      worst = std::max(worst, std::abs(model.inner_matrix(r, c) - (expected(r, c) + ada(r, c) + bdb(r, c))));
    }
  }
  EXPECT_LT(worst, 1e-14);
  const Vector r0 = model.tau + transpose_multiply(a, model.a0) - transpose_multiply(b, model.rho0);
  EXPECT_LT(distance(model.inner_offset(Vector(40)), r0), 1e-12);
}

TEST(Network, SameSeedSameModel) {
  const NetworkModel a = NetworkModel::generate(9);
  const NetworkModel b = NetworkModel::generate(9);
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(a.rho0, b.rho0);
  EXPECT_EQ(a.l, b.l);
  EXPECT_EQ(a.b, b.b);
  EXPECT_NE(a.c, NetworkModel::generate(10).c);
}

TEST(Network, LowerCornerStrictlyFeasible) {
  const NetworkModel model = NetworkModel::generate(5);
  const Vector lx = multiply(model.l, model.f_min);
  for (std::size_t j = 0; j < model.q; ++j) EXPECT_LT(lx[j], model.b[j]);
}

TEST(Network, LiteralSignIsNotMonotone) {
  NetworkOptions options;
  options.demand_sign = DemandPriceSign::kLiteral;
  const NetworkModel model = NetworkModel::generate(1, options);
  EXPECT_FALSE(model.inner_psd);
  EXPECT_THROW((void)build_example2(1, options), ConstructionError);
}

TEST(Network, ComplementarityAtSolution) {
  const Example2 ex = build_example2(6);
  RngStream rng(8, 0);
  for (int trial = 0; trial < 3; ++trial) {
    Vector x(40);
    for (double& v : x) v = rng.uniform(-10.0, 10.0);
    const InnerViSolution sol = inner_equilibrium_solve(*ex.model, x, 1e-9, 1000000);
    const Vector r = ex.model->inner_offset(x);
    const Vector phi = multiply(ex.model->inner_matrix, sol.a_star) + r;
    const double scale = 1.0 + max_abs(r);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      ASSERT_GE(sol.a_star[i], -1e-10);
      ASSERT_GE(phi[i], -1e-6 * scale);
      ASSERT_LE(std::abs(sol.a_star[i] * phi[i]), 1e-6 * scale);
    }
  }
}

TEST(Network, ResponseMapMemoizesAndMatchesDirectSolve) {
  const Example2 ex = build_example2(7);
  NetworkResponseMap map(ex.model, AffineViOptions{});
  const Vector x(40, 1.0);
  const Vector v1 = map.evaluate(x);
  const Vector v2 = map.evaluate(x);
  EXPECT_EQ(v1, v2);
  EXPECT_EQ(map.inner_solves(), 1);
  const Vector direct = ex.model->response(inner_equilibrium_solve(*ex.model, x, 1e-9, 1000000).a_star);
  EXPECT_LT(max_abs(v1 - direct), 1e-6);
}

TEST(Network, TaxRaisesCostsAndLowersShipments) {
  NetworkOptions tax;
  tax.control = ControlConvention::kTax;
  const NetworkModel taxed = NetworkModel::generate(3, tax);
  const NetworkModel incentive = NetworkModel::generate(3);
  const Vector x(40, 5.0);
  const Vector base = taxed.inner_offset(Vector(40));
  const Vector up = taxed.inner_offset(x) - base;
  const Vector down = incentive.inner_offset(x) - base;
  EXPECT_GT(*std::min_element(up.begin(), up.end()), 0.0);
  EXPECT_LT(*std::max_element(down.begin(), down.end()), 0.0);
}

}  // namespace
}  // namespace sivi
