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

// AVX2 kernels. Compiled with -mavx2 -mfma -ffp-contract=off: elementwise
// kernels use separate multiply and add so they match the scalar reference
// bit for bit; reductions use FMA and four accumulators and match only to
// rounding.

#include <immintrin.h>

#include "sivi/numkit/kernel_table.hpp"

namespace sivi::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d px = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d py = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(px, py));
  }
  for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void clamp(const double* u, const double* lo, const double* hi, double* out,
           std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // _mm256_max_pd(a, b) is a > b ? a : b, matching the scalar tie-break.
    const __m256d v = _mm256_max_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(hi + i), v));
  }
  for (; i < n; ++i) {
    double v = u[i] < lo[i] ? lo[i] : u[i];
    out[i] = v > hi[i] ? hi[i] : v;
  }
}

void gemv(const double* m, std::size_t rows, std::size_t cols, const double* x,
          double* y) {
  std::size_t r = 0;
  // Four rows share each load of x.
  for (; r + 4 <= rows; r += 4) {
    const double* m0 = m + r * cols;
    const double* m1 = m0 + cols;
    const double* m2 = m1 + cols;
    const double* m3 = m2 + cols;
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d vx = _mm256_loadu_pd(x + c);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(m0 + c), vx, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(m1 + c), vx, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(m2 + c), vx, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(m3 + c), vx, a3);
    }
    double s0 = hsum(a0), s1 = hsum(a1), s2 = hsum(a2), s3 = hsum(a3);
    for (; c < cols; ++c) {
      s0 += m0[c] * x[c];
      s1 += m1[c] * x[c];
      s2 += m2[c] * x[c];
      s3 += m3[c] * x[c];
    }
    y[r] = s0;
    y[r + 1] = s1;
    y[r + 2] = s2;
    y[r + 3] = s3;
  }
  for (; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double orthant_step(const double* a, const double* phi, double gamma,
                    double* out, std::size_t n) {
  const __m256d vg = _mm256_set1_pd(gamma);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vp = _mm256_loadu_pd(phi + i);
    const __m256d t = _mm256_sub_pd(va, _mm256_mul_pd(vg, vp));
    const __m256d r = _mm256_sub_pd(va, _mm256_max_pd(zero, _mm256_sub_pd(va, vp)));
    acc = _mm256_fmadd_pd(r, r, acc);
    _mm256_storeu_pd(out + i, _mm256_max_pd(zero, t));
  }
  double res = hsum(acc);
  for (; i < n; ++i) {
    const double t = a[i] - gamma * phi[i];
    const double nat = a[i] - phi[i];
    const double r = a[i] - (0.0 > nat ? 0.0 : nat);
    res += r * r;
    out[i] = 0.0 > t ? 0.0 : t;
  }
  return res;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Backend::kAvx2, "avx2", &dot,  &axpy,
                                 &axpby,         &clamp, &gemv, &orthant_step};
  return &table;
}

}  // namespace sivi::simd
