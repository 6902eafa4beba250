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

#include <cmath>

#include "sivi/numkit/errors.hpp"
#include "sivi/oracle/oracle.hpp"
#include "sivi/problems/example1.hpp"

namespace sivi {
namespace {

AdditiveNoiseOracle example1_oracle(double sigma) {
  const Example1Spec spec;
  return AdditiveNoiseOracle(std::make_unique<AffineMap>(spec.a, spec.b_mean), sigma);
}

// A map whose value is NaN in one coordinate.
class PoisonMap final : public MeanMap {
 public:
  std::size_t input_dimension() const override { return 2; }
  std::size_t output_dimension() const override { return 2; }
  Vector evaluate(const Vector&) const override { return Vector{1.0, std::nan("")}; }
  std::unique_ptr<MeanMap> clone() const override { return std::make_unique<PoisonMap>(); }
};

TEST(BatchSize, Schedule) {
  EXPECT_EQ(batch_size({0.5, std::nullopt}, 0), 1);
  EXPECT_EQ(batch_size({1.7, std::nullopt}, 0), 1);
  EXPECT_EQ(batch_size({0.5, std::nullopt}, 3), 64);
  EXPECT_EQ(batch_size({0.5, 500}, 9), 500);
  EXPECT_EQ(batch_size({0.5, std::nullopt}, 9), 1000);
  EXPECT_EQ(batch_size({0.5, std::nullopt}, 199), 8000000);
  // (k+1)^2.5 at k = 3: 32 exactly; at k = 1: 2^2.5 = 5.66 -> 6
  EXPECT_EQ(batch_size({0.25, std::nullopt}, 3), 32);
  EXPECT_EQ(batch_size({0.25, std::nullopt}, 1), 6);
}

TEST(BatchSize, Monotone) {
  for (double delta : {0.1, 0.5, 1.0}) {
    std::int64_t prev = 0;
    for (std::int64_t k = 0; k < 300; ++k) {
      const std::int64_t n = batch_size({delta, std::nullopt}, k);
      ASSERT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(BatchMean, ZeroNoiseIsExact) {
  const AdditiveNoiseOracle oracle = example1_oracle(0.0);
  RngStream rng(1, 0);
  const Vector x{0.3, -0.2, 1.0};
  EXPECT_EQ(batch_mean(oracle, x, 17, rng), oracle.exact_mean(x));
  EXPECT_EQ(oracle.sample_mean(x, 1000, rng), oracle.exact_mean(x));
}

TEST(BatchMean, SingleDrawVerbatim) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  RngStream a(5, 0), b(5, 0);
  const Vector x{1.0, 2.0, 3.0};
  EXPECT_EQ(batch_mean(oracle, x, 1, a), oracle.sample(x, b));
}

TEST(BatchMean, ConsumesExactlyNDraws) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  RngStream rng(5, 0);
  (void)batch_mean(oracle, Vector(3), 25, rng);
  EXPECT_EQ(rng.gaussians_drawn(), 75u);
}

TEST(BatchMean, LargeBatchNearMean) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  RngStream rng(9, 0);
  const Vector m = batch_mean(oracle, Vector(3), 1000000, rng);
  EXPECT_LT(max_abs(m - Vector{0.0, -3.0, -5.5}), 0.01);
}

TEST(BatchMean, NonFiniteDrawReportsIndex) {
  const AdditiveNoiseOracle oracle(std::make_unique<PoisonMap>(), 0.0);
  RngStream rng(1, 0);
  try {
    (void)batch_mean(oracle, Vector(2), 4, rng);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.index(), 0);
  }
  EXPECT_THROW((void)batch_mean(oracle, Vector(2), 0, rng), DomainError);
}

TEST(BatchMean, Unbiased) {
  // Mean of 10^4 batch means minus F(x) is within 4 nu / sqrt(10^4 N).
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  const Vector x{0.5, 0.5, 0.5};
  const Vector f = oracle.exact_mean(x);
  const double nu = std::sqrt(3.0);
  for (bool per_draw : {true, false}) {
    RngStream rng(21, per_draw ? 1 : 0);
    constexpr int kTrials = 10000;
    constexpr std::int64_t kN = 16;
    Vector acc(3);
    for (int t = 0; t < kTrials; ++t) {
      const Vector m = per_draw ? batch_mean(oracle, x, kN, rng)
                                                      : oracle.sample_mean(x, kN, rng);
      axpy(1.0, m - f, acc);
    }
    EXPECT_LE(norm((1.0 / kTrials) * acc), 4.0 * nu / std::sqrt(kTrials * 16.0));
  }
}

TEST(VarianceDecay, Example1Slope) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  RngStream rng(31, 0);
  const VarianceDecayFit fit = verify_variance_decay(oracle, Vector(3), {10, 100, 1000, 10000}, 100, rng);
  EXPECT_FALSE(fit.degenerate);
  EXPECT_GE(fit.slope, -1.15);
  EXPECT_LE(fit.slope, -0.85);
  // nu^2 = trace of the noise covariance = 3
  EXPECT_NEAR(fit.nu_sq(), 3.0, 1.0);
}

TEST(VarianceDecay, ScaledNoiseIntercept) {
  const AdditiveNoiseOracle oracle(std::make_unique<AffineMap>(Matrix::identity(4), Vector(4)), 2.0);
  RngStream rng(32, 0);
  const VarianceDecayFit fit = verify_variance_decay(oracle, Vector(4), {10, 100, 1000}, 200, rng);
  EXPECT_GE(fit.slope, -1.15);
  EXPECT_LE(fit.slope, -0.85);
  EXPECT_NEAR(fit.intercept, std::log(16.0), 0.3);
}

TEST(VarianceDecay, ZeroNoiseDegenerate) {
  const AdditiveNoiseOracle oracle = example1_oracle(0.0);
  RngStream rng(1, 0);
  const VarianceDecayFit fit = verify_variance_decay(oracle, Vector(3), {1, 2, 4}, 30, rng);
  EXPECT_TRUE(fit.degenerate);
}

TEST(VarianceDecay, Preconditions) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  RngStream rng(1, 0);
  EXPECT_THROW((void)verify_variance_decay(oracle, Vector(3), {10, 100}, 30, rng), DomainError);
  EXPECT_THROW((void)verify_variance_decay(oracle, Vector(3), {10, 100, 50}, 30, rng), DomainError);
  EXPECT_THROW((void)verify_variance_decay(oracle, Vector(3), {10, 100, 1000}, 29, rng), DomainError);
}

TEST(Oracle, CloneIsIndependentCopy) {
  const AdditiveNoiseOracle oracle = example1_oracle(1.0);
  const auto copy = oracle.clone();
  RngStream a(3, 0), b(3, 0);
  const Vector x{1.0, 0.0, -1.0};
  EXPECT_EQ(oracle.sample(x, a), copy->sample(x, b));
  EXPECT_EQ(copy->additive_gaussian_sigma(), 1.0);
}

}  // namespace
}  // namespace sivi
