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

#include <limits>
#include <optional>
#include <variant>

#include "sivi/numkit/linalg.hpp"
#include "sivi/numkit/rng.hpp"

namespace sivi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// {x : lo <= x <= hi}. Bounds may be +-infinity, so the same type covers the
// nonnegative orthant and the whole space.
class BoxSet {
 public:
  // Throws DimensionError on size mismatch, ConstructionError when lo > hi
  // somewhere or a bound is NaN.
  BoxSet(Vector lo, Vector hi);
  static BoxSet uniform(std::size_t n, double lo, double hi);
  static BoxSet nonnegative_orthant(std::size_t n);
  static BoxSet whole_space(std::size_t n);

  std::size_t dimension() const { return lo_.size(); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  bool contains(const Vector& x, double tol = 0.0) const;

 private:
  Vector lo_;
  Vector hi_;
};

// {x : Lx <= b} intersected with a box. A strictly feasible point is
// certified at construction.
class PolyhedronSet {
 public:
  static constexpr double kFeasibilityMargin = 1e-6;

  // Uses `interior` when given (it must clear every constraint by the
  // margin), otherwise searches with a clamp-then-shift heuristic. Throws
  // ConstructionError when neither yields a certified point.
  PolyhedronSet(BoxSet box, Matrix l, Vector b, std::optional<Vector> interior = std::nullopt);

  std::size_t dimension() const { return box_.dimension(); }
  std::size_t halfspaces() const { return l_.rows(); }
  const BoxSet& box() const { return box_; }
  const Matrix& l() const { return l_; }
  const Vector& b() const { return b_; }
  const Vector& interior_point() const { return interior_; }

  // max(0, max_i (Lx - b)_i, box violation)
  double violation(const Vector& x) const;
  // Smallest slack over all constraints (negative when violated).
  double min_slack(const Vector& x) const;

 private:
  BoxSet box_;
  Matrix l_;
  Vector b_;
  Vector l_row_norm_sq_;
  Vector interior_;

  friend Vector project_polyhedron(const Vector&, const PolyhedronSet&, double, int);
};

struct ProjectionOptions {
  double tol = 1e-10;
  int max_iter = 10000;
};

// Exact Euclidean projection onto a box (componentwise clamp).
Vector project_box(const Vector& u, const BoxSet& set);

// Euclidean projection onto {x : a.x <= beta}.
Vector project_halfspace(const Vector& u, std::span<const double> a, double beta);

// Projection onto a polyhedron by Dykstra's algorithm over the box and each
// halfspace. Plain alternating projections would stop at some feasible
// point; the Dykstra increments make the limit the projection itself. Stops
// when the increments move by at most tol in a sweep and the constraint
// violation is at most tol; throws IterationLimitError after max_iter sweeps.
Vector project_polyhedron(const Vector& u, const PolyhedronSet& set, double tol = 1e-10,
                          int max_iter = 10000);

// A closed convex feasible set with its projection.
class FeasibleSet {
 public:
  FeasibleSet(BoxSet box) : set_(std::move(box)) {}  // NOLINT: implicit by intent
  FeasibleSet(PolyhedronSet poly, ProjectionOptions options = {})  // NOLINT
      : set_(std::move(poly)), options_(options) {}

  std::size_t dimension() const;
  Vector project(const Vector& u) const;
  bool contains(const Vector& x, double tol = 1e-9) const;

  bool is_box() const { return std::holds_alternative<BoxSet>(set_); }
  const BoxSet& box() const;
  const PolyhedronSet* polyhedron() const { return std::get_if<PolyhedronSet>(&set_); }
  const ProjectionOptions& options() const { return options_; }

  // A point of the set: a uniform draw from the bounding box (unbounded
  // coordinates drawn from a unit-scale window) projected onto the set.
  Vector sample_point(RngStream& rng) const;

 private:
  std::variant<BoxSet, PolyhedronSet> set_;
  ProjectionOptions options_;
};

}  // namespace sivi
