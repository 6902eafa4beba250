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

#include "sivi/feasible/feasible.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"

namespace sivi {

BoxSet::BoxSet(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) {
    throw DimensionError("BoxSet: lo has " + std::to_string(lo_.size()) + " entries, hi has " +
                         std::to_string(hi_.size()));
  }
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (std::isnan(lo_[i]) || std::isnan(hi_[i]) || lo_[i] > hi_[i]) {
      throw ConstructionError("BoxSet: invalid bounds at coordinate " + std::to_string(i));
    }
  }
}

BoxSet BoxSet::uniform(std::size_t n, double lo, double hi) {
  return BoxSet(Vector(n, lo), Vector(n, hi));
}

BoxSet BoxSet::nonnegative_orthant(std::size_t n) { return BoxSet(Vector(n, 0.0), Vector(n, kInf)); }

BoxSet BoxSet::whole_space(std::size_t n) { return BoxSet(Vector(n, -kInf), Vector(n, kInf)); }

bool BoxSet::contains(const Vector& x, double tol) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  }
  return true;
}

Vector project_box(const Vector& u, const BoxSet& set) {
  if (u.size() != set.dimension()) {
    throw DimensionError("project_box: point has " + std::to_string(u.size()) +
                         " entries, set has dimension " + std::to_string(set.dimension()));
  }
  Vector out(u.size());
  simd::clamp(u.span(), set.lo().span(), set.hi().span(), out.span());
  return out;
}

Vector project_halfspace(const Vector& u, std::span<const double> a, double beta) {
  const double excess = simd::dot(u.span(), a) - beta;
  if (excess <= 0.0) return u;
  const double nsq = simd::dot(a, a);
  Vector out = u;
  simd::axpy(-excess / nsq, a, out.span());
  return out;
}

namespace {

Vector shrink_into_box(const Vector& x, const BoxSet& box, double margin) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lo = box.lo()[i];
    double hi = box.hi()[i];
    if (std::isfinite(lo) && std::isfinite(hi) && hi - lo <= 2.0 * margin) {
      out[i] = 0.5 * (lo + hi);
      continue;
    }
    if (std::isfinite(lo)) lo += margin;
    if (std::isfinite(hi)) hi -= margin;
    out[i] = std::clamp(x[i], lo, hi);
  }
  return out;
}

Vector box_centre(const BoxSet& box) {
  Vector c(box.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double lo = box.lo()[i];
    const double hi = box.hi()[i];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      c[i] = 0.5 * (lo + hi);
    } else {
      c[i] = std::clamp(0.0, lo, hi);
    }
  }
  return c;
}

}  // namespace

PolyhedronSet::PolyhedronSet(BoxSet box, Matrix l, Vector b, std::optional<Vector> interior)
    : box_(std::move(box)), l_(std::move(l)), b_(std::move(b)) {
  const std::size_t n = box_.dimension();
  if (l_.rows() != b_.size() || (l_.rows() > 0 && l_.cols() != n)) {
    throw DimensionError("PolyhedronSet: L is " + std::to_string(l_.rows()) + "x" +
                         std::to_string(l_.cols()) + ", b has " + std::to_string(b_.size()) +
                         " entries, box dimension " + std::to_string(n));
  }
  l_row_norm_sq_ = Vector(l_.rows());
  for (std::size_t i = 0; i < l_.rows(); ++i) {
    l_row_norm_sq_[i] = simd::dot(l_.row(i), l_.row(i));
    if (!(l_row_norm_sq_[i] > 0.0)) {
      throw ConstructionError("PolyhedronSet: row " + std::to_string(i) + " of L is zero");
    }
  }

  if (interior) {
    if (interior->size() != n) throw DimensionError("PolyhedronSet: interior point dimension");
    if (min_slack(*interior) < kFeasibilityMargin) {
      throw ConstructionError("PolyhedronSet: supplied interior point has slack " +
                              std::to_string(min_slack(*interior)) + " < margin");
    }
    interior_ = std::move(*interior);
    return;
  }

  // Clamp the box centre inside the shrunken box, then shift along violated
  // halfspace normals until every constraint clears twice the margin.
  Vector x = shrink_into_box(box_centre(box_), box_, 2.0 * kFeasibilityMargin);
  for (int round = 0; round < 1000 && min_slack(x) < kFeasibilityMargin; ++round) {
    for (std::size_t i = 0; i < l_.rows(); ++i) {
      x = project_halfspace(x, l_.row(i), b_[i] - 2.0 * kFeasibilityMargin * std::sqrt(l_row_norm_sq_[i]));
    }
    x = shrink_into_box(x, box_, 2.0 * kFeasibilityMargin);
  }
  if (min_slack(x) < kFeasibilityMargin) {
    throw ConstructionError("PolyhedronSet: no strictly feasible point found (best slack " +
                            std::to_string(min_slack(x)) + "); the set may be empty");
  }
  interior_ = std::move(x);
}

double PolyhedronSet::min_slack(const Vector& x) const {
  double slack = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    slack = std::min({slack, x[i] - box_.lo()[i], box_.hi()[i] - x[i]});
  }
  for (std::size_t i = 0; i < l_.rows(); ++i) {
    slack = std::min(slack, (b_[i] - simd::dot(l_.row(i), x.span())) / std::sqrt(l_row_norm_sq_[i]));
  }
  return slack;
}

double PolyhedronSet::violation(const Vector& x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v = std::max({v, box_.lo()[i] - x[i], x[i] - box_.hi()[i]});
  }
  for (std::size_t i = 0; i < l_.rows(); ++i) {
    v = std::max(v, simd::dot(l_.row(i), x.span()) - b_[i]);
  }
  return v;
}

Vector project_polyhedron(const Vector& u, const PolyhedronSet& set, double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("project_polyhedron: tol must be positive");
  if (u.size() != set.dimension()) {
    throw DimensionError("project_polyhedron: point has " + std::to_string(u.size()) +
                         " entries, set has dimension " + std::to_string(set.dimension()));
  }
  if (set.halfspaces() == 0) return project_box(u, set.box());
  if (set.violation(u) <= 0.0) return u;

  const std::size_t n = u.size();
  const std::size_t q = set.halfspaces();
  Vector x = u;
  Vector y(n);
  // Dykstra increments: one vector for the box, a scalar multiple of the
  // normal for each halfspace.
  Vector p_box(n, 0.0);
  std::vector<double> p_half(q, 0.0);

  double change = kInf;
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    double change_sq = 0.0;

    // Box: y = x + p, x = clamp(y), p = y - x.
    simd::axpby(1.0, x.span(), 1.0, p_box.span(), y.span());
    simd::clamp(y.span(), set.box().lo().span(), set.box().hi().span(), x.span());
    for (std::size_t i = 0; i < n; ++i) {
      const double p_new = y[i] - x[i];
      const double d = p_new - p_box[i];
      change_sq += d * d;
      p_box[i] = p_new;
    }

    // Halfspace i: the increment is theta * L_i with theta >= 0.
    for (std::size_t i = 0; i < q; ++i) {
      const auto row = set.l_.row(i);
      const double nsq = set.l_row_norm_sq_[i];
      // y = x + theta_old * row; project y; theta_new = excess(y) / nsq.
      const double excess = simd::dot(row, x.span()) + p_half[i] * nsq - set.b_[i];
      const double theta_new = excess > 0.0 ? excess / nsq : 0.0;
      // x_new = y - theta_new * row = x + (theta_old - theta_new) * row
      simd::axpy(p_half[i] - theta_new, row, x.span());
      const double d = theta_new - p_half[i];
      change_sq += d * d * nsq;
      p_half[i] = theta_new;
    }

    change = std::sqrt(change_sq);
    if (change <= tol && set.violation(x) <= tol) return x;
  }
  throw IterationLimitError("project_polyhedron: Dykstra did not converge in " +
                                std::to_string(max_iter) + " sweeps",
                            change);
}

std::size_t FeasibleSet::dimension() const {
  return std::visit([](const auto& s) { return s.dimension(); }, set_);
}

const BoxSet& FeasibleSet::box() const {
  if (const auto* b = std::get_if<BoxSet>(&set_)) return *b;
  return std::get<PolyhedronSet>(set_).box();
}

Vector FeasibleSet::project(const Vector& u) const {
  if (const auto* b = std::get_if<BoxSet>(&set_)) return project_box(u, *b);
  return project_polyhedron(u, std::get<PolyhedronSet>(set_), options_.tol, options_.max_iter);
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (const auto* b = std::get_if<BoxSet>(&set_)) return b->contains(x, tol);
  const auto& p = std::get<PolyhedronSet>(set_);
  return x.size() == p.dimension() && p.violation(x) <= tol;
}

Vector FeasibleSet::sample_point(RngStream& rng) const {
  const BoxSet& b = box();
  Vector x(b.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lo = b.lo()[i];
    double hi = b.hi()[i];
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      lo = -1.0;
      hi = 1.0;
    } else if (!std::isfinite(lo)) {
      lo = hi - 2.0;
    } else if (!std::isfinite(hi)) {
      hi = lo + 2.0;
    }
    x[i] = rng.uniform(lo, hi);
  }
  return is_box() ? x : project(x);
}

}  // namespace sivi
