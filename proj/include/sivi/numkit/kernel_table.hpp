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

#include <cstddef>

// Raw kernel signatures shared by every backend. Kept free of other library
// headers so backend translation units compile with only intrinsics headers.

namespace sivi::simd {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = alpha * x + beta * y
  void (*axpby)(double alpha, const double* x, double beta, const double* y,
                double* out, std::size_t n);
  // out = min(max(u, lo), hi), with the tie-breaking of `u < lo ? lo : u`
  void (*clamp)(const double* u, const double* lo, const double* hi,
                double* out, std::size_t n);
  // y = M x, M row-major rows x cols
  void (*gemv)(const double* m, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // out = max(a - gamma * phi, 0); returns sum_i (a_i - max(a_i - phi_i, 0))^2,
  // the squared natural-map residual of a.
  double (*orthant_step)(const double* a, const double* phi, double gamma,
                         double* out, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the backend was not compiled in.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

}  // namespace sivi::simd
