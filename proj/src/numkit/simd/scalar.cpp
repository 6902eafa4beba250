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

// Reference kernels. Every other backend is tested against these.

#include "sivi/numkit/kernel_table.hpp"

namespace sivi::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void clamp(const double* u, const double* lo, const double* hi, double* out,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = u[i] < lo[i] ? lo[i] : u[i];
    out[i] = v > hi[i] ? hi[i] : v;
  }
}

void gemv(const double* m, std::size_t rows, std::size_t cols, const double* x,
          double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double orthant_step(const double* a, const double* phi, double gamma,
                    double* out, std::size_t n) {
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a[i] - gamma * phi[i];
    const double nat = a[i] - phi[i];
    const double r = a[i] - (0.0 > nat ? 0.0 : nat);
    res += r * r;
    out[i] = 0.0 > t ? 0.0 : t;
  }
  return res;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::kScalar, "scalar", &dot,  &axpy,
                                 &axpby,           &clamp,   &gemv, &orthant_step};
  return table;
}

}  // namespace sivi::simd
