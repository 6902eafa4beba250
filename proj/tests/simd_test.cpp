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
#include <cstdlib>
#include <vector>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"
#include "sivi/numkit/rng.hpp"

namespace sivi::simd {
namespace {

std::vector<double> random_vector(RngStream& rng, std::size_t n, double scale = 10.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-scale, scale);
  return v;
}

// Every compiled-in backend except scalar, which is the reference.
std::vector<const KernelTable*> vector_backends() {
  std::vector<const KernelTable*> out;
  for (const KernelTable* t : available()) {
    if (t->backend != Backend::kScalar) out.push_back(t);
  }
  return out;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelEquivalence, MatchesScalarReference) {
  const KernelTable& ref = scalar_kernels();
  const std::size_t n = GetParam();
  RngStream rng(99, n);
  for (const KernelTable* t : vector_backends()) {
    SCOPED_TRACE(t->name);
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    std::vector<double> lo = random_vector(rng, n, 3.0), hi(n);
    for (std::size_t i = 0; i < n; ++i) hi[i] = lo[i] + std::abs(b[i]) * 0.3;
    if (n > 2) lo[1] = hi[1];  // degenerate interval

    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(a[i] * b[i]);
    EXPECT_NEAR(t->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n),
                1e-15 * (1.0 + abs_sum) * static_cast<double>(n + 1));

    // elementwise kernels are bit-exact
    auto y1 = b, y2 = b;
    ref.axpy(0.7, a.data(), y1.data(), n);
    t->axpy(0.7, a.data(), y2.data(), n);
    EXPECT_EQ(y1, y2);

    std::vector<double> o1(n), o2(n);
    ref.axpby(-1.3, a.data(), 0.4, b.data(), o1.data(), n);
    t->axpby(-1.3, a.data(), 0.4, b.data(), o2.data(), n);
    EXPECT_EQ(o1, o2);

    ref.clamp(a.data(), lo.data(), hi.data(), o1.data(), n);
    t->clamp(a.data(), lo.data(), hi.data(), o2.data(), n);
    EXPECT_EQ(o1, o2);

    const double s1 = ref.orthant_step(a.data(), b.data(), 0.25, o1.data(), n);
    const double s2 = t->orthant_step(a.data(), b.data(), 0.25, o2.data(), n);
    EXPECT_EQ(o1, o2);
    EXPECT_NEAR(s1, s2, 1e-14 * (1.0 + s1));

    const std::size_t rows = n % 7 + 1;
    const auto m = random_vector(rng, rows * n);
    std::vector<double> g1(rows), g2(rows);
    ref.gemv(m.data(), rows, n, a.data(), g1.data());
    t->gemv(m.data(), rows, n, a.data(), g2.data());
    for (std::size_t r = 0; r < rows; ++r) {
      EXPECT_NEAR(g1[r], g2[r], 1e-13 * (1.0 + 100.0 * static_cast<double>(n)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelEquivalence, ::testing::Range<std::size_t>(0, 68));

TEST(Kernels, ClampSpecialValues) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> u{-5.0, 5.0, 0.5, -0.0, 7.0};
  const std::vector<double> lo{-1.0, -inf, -inf, 0.0, -inf};
  const std::vector<double> hi{1.0, 2.0, inf, 1.0, inf};
  for (const KernelTable* t : available()) {
    std::vector<double> out(u.size());
    t->clamp(u.data(), lo.data(), hi.data(), out.data(), u.size());
    EXPECT_EQ(out, (std::vector<double>{-1.0, 2.0, 0.5, -0.0, 7.0})) << t->name;
  }
}

TEST(Kernels, OrthantStepResidual) {
  // a = [1, 0, 2], phi = [2, -1, 0.5]: residual terms 1, 0, 0.5
  const std::vector<double> a{1.0, 0.0, 2.0};
  const std::vector<double> phi{2.0, -1.0, 0.5};
  for (const KernelTable* t : available()) {
    std::vector<double> out(3);
    const double r2 = t->orthant_step(a.data(), phi.data(), 0.5, out.data(), 3);
    EXPECT_DOUBLE_EQ(r2, 1.0 + 1.0 + 0.25) << t->name;
    EXPECT_EQ(out, (std::vector<double>{0.0, 0.5, 1.75})) << t->name;
  }
}

TEST(Dispatch, SelectAndRestore) {
  const Backend original = active().backend;
  select(Backend::kScalar);
  EXPECT_EQ(active().backend, Backend::kScalar);
  EXPECT_STREQ(active().name, "scalar");
  select("scalar");
  EXPECT_THROW(select("bogus"), Error);
  select(original);
  EXPECT_EQ(active().backend, original);
}

TEST(Dispatch, SpanWrappersCheckSizes) {
  std::vector<double> a(3), b(4);
  EXPECT_THROW((void)dot(a, b), DimensionError);
  EXPECT_THROW(axpy(1.0, a, b), DimensionError);
  EXPECT_THROW(gemv(a, 2, 2, a, b), DimensionError);
}

TEST(Dispatch, ScalarAlwaysAvailable) {
  bool found = false;
  for (const KernelTable* t : available()) found |= t->backend == Backend::kScalar;
  EXPECT_TRUE(found);
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && avx2_kernels()) {
    EXPECT_EQ(available().size(), 2u);
  }
#endif
}

}  // namespace
}  // namespace sivi::simd
