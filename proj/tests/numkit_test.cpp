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
#include <numbers>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/linalg.hpp"
#include "sivi/numkit/rng.hpp"
#include "sivi/numkit/spectral.hpp"

namespace sivi {
namespace {

// Roots of det(A - t I) for symmetric 3x3 A, by the trigonometric formula.
std::array<double, 3> symmetric_cubic_roots(const Matrix& a) {
  const double tr = a(0, 0) + a(1, 1) + a(2, 2);
  const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) -
                        a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  // t = s + tr/3 gives s^3 + p s + q = 0
  const double p = minors - tr * tr / 3.0;
  const double q = -2.0 * tr * tr * tr / 27.0 + tr * minors / 3.0 - det;
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0)) / 3.0;
  std::array<double, 3> roots;
  for (int k = 0; k < 3; ++k) {
    roots[k] = tr / 3.0 + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

const Matrix kExampleMatrix{{5.0, 2.0, 1.0}, {2.0, 5.0, 0.0}, {1.0, 0.0, 6.0}};

TEST(Linalg, BasicOperations) {
  const Vector a{1.0, 2.0, 2.0};
  const Vector b{3.0, 0.0, -4.0};
  EXPECT_DOUBLE_EQ(dot(a, b), -5.0);
  EXPECT_DOUBLE_EQ(norm(a), 3.0);
  EXPECT_DOUBLE_EQ(norm_sq(b), 25.0);
  EXPECT_DOUBLE_EQ(max_abs(b), 4.0);
  EXPECT_EQ(a + b, (Vector{4.0, 2.0, -2.0}));
  EXPECT_EQ(a - b, (Vector{-2.0, 2.0, 6.0}));
  EXPECT_EQ(2.0 * a, (Vector{2.0, 4.0, 4.0}));
  EXPECT_EQ(concat(a, b).size(), 6u);
  EXPECT_THROW((void)dot(a, Vector{1.0}), DimensionError);
}

TEST(Linalg, MatrixProducts) {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
  EXPECT_EQ(multiply(m, Vector{1.0, -1.0}), (Vector{-1.0, -1.0, -1.0}));
  EXPECT_EQ(transpose_multiply(m, Vector{1.0, 0.0, 1.0}), (Vector{6.0, 8.0}));
  EXPECT_EQ(transpose(transpose(m)), m);
  const Matrix g = multiply(transpose(m), m);
  EXPECT_TRUE(is_symmetric(g));
  EXPECT_DOUBLE_EQ(g(0, 1), 44.0);
  EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Linalg, FiniteCheck) {
  EXPECT_TRUE(all_finite(Vector{1.0, -2.0}.span()));
  EXPECT_FALSE(all_finite(Vector{1.0, std::nan("")}.span()));
  EXPECT_FALSE(all_finite(Vector{std::numeric_limits<double>::infinity()}.span()));
}

TEST(Spectral, ExampleMatrixMatchesCubicRoots) {
  const auto roots = symmetric_cubic_roots(kExampleMatrix);
  EXPECT_NEAR(roots[2], 7.39138, 1e-5);
  EXPECT_NEAR(roots[0], 2.8358, 1e-4);
  const EigenEstimate est = largest_eigenvalue(kExampleMatrix, 1e-13);
  EXPECT_NEAR(est.value, roots[2], 1e-10);
  EXPECT_NEAR(norm(est.vector), 1.0, 1e-12);
  const Vector av = multiply(kExampleMatrix, est.vector);
  EXPECT_LT(distance(av, est.value * est.vector), 1e-10);
}

TEST(Spectral, IdentityAndDiagonal) {
  EXPECT_NEAR(largest_eigenvalue(Matrix::identity(4), 1e-12).value, 1.0, 1e-12);
  const Vector d{0.5, 9.0, 3.0};
  EXPECT_NEAR(largest_eigenvalue(Matrix::diagonal(d.span()), 1e-12).value, 9.0, 1e-10);
}

TEST(Spectral, NegativeDefiniteUsesShift) {
  const Matrix m{{-3.0, 0.0}, {0.0, -1.0}};
  EXPECT_NEAR(largest_eigenvalue(m, 1e-12).value, -1.0, 1e-9);
}

TEST(Spectral, RejectsAsymmetric) {
  const Matrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW((void)largest_eigenvalue(m, 1e-12), DimensionError);
}

TEST(Spectral, PositiveSemidefinite) {
  EXPECT_TRUE(is_positive_semidefinite(kExampleMatrix));
  EXPECT_TRUE(is_positive_semidefinite(Matrix{{1.0, 1.0}, {1.0, 1.0}}));
  EXPECT_FALSE(is_positive_semidefinite(Matrix{{1.0, 2.0}, {2.0, 1.0}}));
}

TEST(Rng, SameSeedSameStream) {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.uniform(), b.uniform());
    ASSERT_EQ(a.gaussian(), b.gaussian());
  }
}

TEST(Rng, StreamsDiffer) {
  RngStream a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    same_ab += x == b.uniform();
    same_ac += x == c.uniform();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(Rng, ForkIsDeterministicAndIndependentOfParentPosition) {
  RngStream a(5, 2);
  const RngStream f1 = a.fork(1);
  for (int i = 0; i < 10; ++i) a.uniform();
  RngStream f2 = a.fork(1);
  RngStream f1c = f1;
  EXPECT_EQ(f1c.uniform(), f2.uniform());
  RngStream f3 = a.fork(2);
  RngStream f1d = f1;
  EXPECT_NE(f1d.uniform(), f3.uniform());
}

TEST(Rng, UniformOpenInterval) {
  RngStream rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, GaussianMoments) {
  RngStream rng(11, 0);
  constexpr int kN = 1000000;
  double sum = 0.0, sum_sq = 0.0, sum4 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum_sq += g * g;
    sum4 += g * g * g * g;
  }
  EXPECT_EQ(rng.gaussians_drawn(), static_cast<std::uint64_t>(kN));
  const double mean = sum / kN;
  const double var = sum_sq / kN - mean * mean;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(kN));
  EXPECT_LT(std::abs(var - 1.0), 5.0 * std::sqrt(2.0 / kN));
  EXPECT_LT(std::abs(sum4 / kN - 3.0), 5.0 * std::sqrt(96.0 / kN));
}

TEST(Rng, UniformMoments) {
  RngStream rng(12, 0);
  constexpr int kN = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform(-2.0, 4.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / kN;
  EXPECT_NEAR(mean, 1.0, 5.0 * std::sqrt(3.0 / kN));
  EXPECT_NEAR(sum_sq / kN - mean * mean, 3.0, 0.02);
}

TEST(Rng, SplitMixKnownValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace sivi
