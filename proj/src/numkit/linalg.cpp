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

#include "sivi/numkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"

namespace sivi {
namespace {

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

double dot(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "dot");
  return simd::dot(a.span(), b.span());
}

double norm_sq(const Vector& a) { return simd::dot(a.span(), a.span()); }

double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

double distance(const Vector& a, const Vector& b) { return norm(a - b); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Vector operator+(const Vector& a, const Vector& b) { return axpby(1.0, a, 1.0, b); }

Vector operator-(const Vector& a, const Vector& b) { return axpby(1.0, a, -1.0, b); }

Vector operator*(double s, const Vector& a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same(x.size(), y.size(), "axpy");
  simd::axpy(alpha, x.span(), y.span());
}

Vector axpby(double alpha, const Vector& x, double beta, const Vector& y) {
  require_same(x.size(), y.size(), "axpby");
  Vector out(x.size());
  simd::axpby(alpha, x.span(), beta, y.span(), out.span());
  return out;
}

Vector multiply(const Matrix& m, const Vector& x) {
  require_same(m.cols(), x.size(), "multiply");
  Vector y(m.rows());
  simd::gemv(m.flat(), m.rows(), m.cols(), x.span(), y.span());
  return y;
}

Vector transpose_multiply(const Matrix& m, const Vector& x) {
  require_same(m.rows(), x.size(), "transpose_multiply");
  Vector y(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] != 0.0) simd::axpy(x[r], m.row(r), y.span());
  }
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same(a.cols(), b.rows(), "multiply");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double s = a(i, k);
      if (s != 0.0) simd::axpy(s, b.row(k), out.row(i));
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

double asymmetry(const Matrix& m) {
  if (!m.square()) {
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  double scale = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::abs(m(i, j)));
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    }
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  return m.square() && asymmetry(m) <= rel_tol;
}

Vector concat(const Vector& a, const Vector& b) {
  std::vector<double> v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return Vector(std::move(v));
}

}  // namespace sivi
