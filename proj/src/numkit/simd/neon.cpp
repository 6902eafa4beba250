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

// NEON (AArch64) kernels. Selections use compare-and-select rather than
// vmaxq/vminq so signed zeros tie-break exactly like the scalar reference.

#include <arm_neon.h>

#include "sivi/numkit/kernel_table.hpp"

namespace sivi::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)),
                                 vmulq_f64(vb, vld1q_f64(y + i))));
  }
  for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void clamp(const double* u, const double* lo, const double* hi, double* out,
           std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vu = vld1q_f64(u + i);
    const float64x2_t vl = vld1q_f64(lo + i);
    const float64x2_t vh = vld1q_f64(hi + i);
    const float64x2_t v = vbslq_f64(vcltq_f64(vu, vl), vl, vu);
    vst1q_f64(out + i, vbslq_f64(vcgtq_f64(v, vh), vh, v));
  }
  for (; i < n; ++i) {
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
  const float64x2_t vg = vdupq_n_f64(gamma);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a + i);
    const float64x2_t vp = vld1q_f64(phi + i);
    const float64x2_t t = vsubq_f64(va, vmulq_f64(vg, vp));
    const float64x2_t nat = vsubq_f64(va, vp);
    const float64x2_t r = vsubq_f64(va, vbslq_f64(vcgtq_f64(zero, nat), zero, nat));
    acc = vfmaq_f64(acc, r, r);
    vst1q_f64(out + i, vbslq_f64(vcgtq_f64(zero, t), zero, t));
  }
  double res = vaddvq_f64(acc);
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

const KernelTable* neon_kernels() {
  static const KernelTable table{Backend::kNeon, "neon", &dot,  &axpy,
                                 &axpby,         &clamp, &gemv, &orthant_step};
  return &table;
}

}  // namespace sivi::simd
