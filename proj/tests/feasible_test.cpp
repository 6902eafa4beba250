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

#include "qp_oracles.hpp"
#include "sivi/feasible/feasible.hpp"
#include "sivi/numkit/errors.hpp"

namespace sivi {
namespace {

const BoxSet kCube = BoxSet::uniform(3, -1.0, 10.0);

// Random 5-dim box with two halfspaces cutting through it; the box's lower
// corner is strictly feasible.
PolyhedronSet random_polyhedron(RngStream& rng) {
  Vector lo(5), hi(5);
  for (std::size_t i = 0; i < 5; ++i) {
    lo[i] = rng.uniform(-2.0, 0.0);
    hi[i] = lo[i] + rng.uniform(0.5, 3.0);
  }
  Matrix l(2, 5);
  Vector b(2);
  for (std::size_t j = 0; j < 2; ++j) {
    double lo_val = 0.0, mid_val = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      l(j, i) = rng.uniform(0.0, 1.0);
      lo_val += l(j, i) * lo[i];
      mid_val += l(j, i) * 0.5 * (hi[i] - lo[i]);
    }
    b[j] = lo_val + mid_val;
  }
  return PolyhedronSet(BoxSet(lo, hi), l, b);
}

TEST(ProjectBox, Examples) {
  EXPECT_EQ(project_box(Vector{1.55, -1.4, -1.75}, kCube), (Vector{1.55, -1.0, -1.0}));
  EXPECT_EQ(project_box(Vector{11.0, 5.0, -2.0}, kCube), (Vector{10.0, 5.0, -1.0}));
  const Vector inside{0.0, 3.0, 9.5};
  EXPECT_EQ(project_box(inside, kCube), inside);
}

TEST(ProjectBox, InfiniteBounds) {
  const BoxSet orthant = BoxSet::nonnegative_orthant(3);
  EXPECT_EQ(project_box(Vector{-1.0, 1e300, 2.0}, orthant), (Vector{0.0, 1e300, 2.0}));
  const BoxSet all = BoxSet::whole_space(2);
  EXPECT_EQ(project_box(Vector{-7.0, 7.0}, all), (Vector{-7.0, 7.0}));
}

TEST(ProjectBox, Errors) {
  EXPECT_THROW((void)project_box(Vector{1.0}, kCube), DimensionError);
  EXPECT_THROW(BoxSet(Vector{1.0}, Vector{0.0}), ConstructionError);
  EXPECT_THROW(BoxSet(Vector{1.0, 2.0}, Vector{3.0}), DimensionError);
}

TEST(ProjectHalfspace, ClosedForm) {
  const std::vector<double> a{1.0, 1.0};
  EXPECT_EQ(project_halfspace(Vector{0.0, 0.0}, a, 1.0), (Vector{0.0, 0.0}));
  const Vector p = project_halfspace(Vector{2.0, 2.0}, a, 2.0);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0, 1e-15);
}

TEST(PolyhedronSet, InteriorPointCertified) {
  RngStream rng(3, 0);
  const PolyhedronSet poly = random_polyhedron(rng);
  EXPECT_GE(poly.min_slack(poly.interior_point()), PolyhedronSet::kFeasibilityMargin);
}

TEST(PolyhedronSet, EmptySetFailsLoudly) {
  const Matrix l{{1.0, 1.0}};
  EXPECT_THROW(PolyhedronSet(BoxSet::uniform(2, 0.0, 1.0), l, Vector{-1.0}), ConstructionError);
  EXPECT_THROW(PolyhedronSet(BoxSet::uniform(2, 0.0, 1.0), Matrix{{0.0, 0.0}}, Vector{1.0}),
               ConstructionError);
}

TEST(ProjectPolyhedron, InsidePointUnchanged) {
  RngStream rng(4, 0);
  const PolyhedronSet poly = random_polyhedron(rng);
  const Vector& inside = poly.interior_point();
  EXPECT_LT(distance(project_polyhedron(inside, poly), inside), 1e-10);
}

TEST(ProjectPolyhedron, NoHalfspacesEqualsBox) {
  const BoxSet box = BoxSet::uniform(4, -1.0, 1.0);
  const PolyhedronSet poly(box, Matrix(0, 4), Vector());
  const Vector u{3.0, -0.5, -4.0, 0.25};
  EXPECT_EQ(project_polyhedron(u, poly), project_box(u, box));
}

TEST(ProjectPolyhedron, MatchesActiveSetEnumeration) {
  RngStream rng(2024, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PolyhedronSet poly = random_polyhedron(rng);
    Vector u(5);
    for (std::size_t i = 0; i < 5; ++i) u[i] = rng.uniform(-5.0, 5.0);
    const Vector dykstra = project_polyhedron(u, poly);
    const Vector oracle = testing::enumerate_projection(u, poly.box().lo(), poly.box().hi(),
                                                        poly.l(), poly.b());
    worst = std::max(worst, distance(dykstra, oracle));
  }
  EXPECT_LE(worst, 1e-7);
}

TEST(ProjectPolyhedron, IterationLimit) {
  RngStream rng(8, 0);
  const PolyhedronSet poly = random_polyhedron(rng);
  Vector far(5, 50.0);
  EXPECT_THROW((void)project_polyhedron(far, poly, 1e-10, 1), IterationLimitError);
  EXPECT_THROW((void)project_polyhedron(far, poly, 0.0, 100), DomainError);
}

class ProjectionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ProjectionProperties, NonexpansiveObtuseIdempotent) {
  RngStream rng(77, static_cast<std::uint64_t>(GetParam()));
  const FeasibleSet set = GetParam() == 0 ? FeasibleSet(kCube) : FeasibleSet(random_polyhedron(rng));
  const std::size_t n = set.dimension();
  const double tol = set.options().tol;
  for (int i = 0; i < 2000; ++i) {
    Vector u(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = rng.uniform(-15.0, 15.0);
      v[j] = rng.uniform(-15.0, 15.0);
    }
    const Vector pu = set.project(u);
    const Vector pv = set.project(v);
    ASSERT_TRUE(set.contains(pu, 1e-9));
    ASSERT_LE(distance(pu, pv), distance(u, v) + 1e-9);
    const Vector y = set.sample_point(rng);
    ASSERT_LE(dot(u - pu, y - pu), 1e-9);
    ASSERT_LE(distance(set.project(pu), pu), 2.0 * tol);
  }
}

INSTANTIATE_TEST_SUITE_P(Sets, ProjectionProperties, ::testing::Values(0, 1, 2));

}  // namespace
}  // namespace sivi
