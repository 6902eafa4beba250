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

#include <atomic>
#include <cstdlib>
#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"

namespace sivi::simd {

#if !defined(SIVI_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(SIVI_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(SIVI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
      // Advanced SIMD is mandatory on AArch64.
      return neon_kernels() != nullptr;
  }
  return false;
}

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &scalar_kernels();
    case Backend::kAvx2:
      return avx2_kernels();
    case Backend::kNeon:
      return neon_kernels();
  }
  return nullptr;
}

const KernelTable* usable(Backend backend) {
  const KernelTable* t = table_for(backend);
  return (t != nullptr && cpu_supports(backend)) ? t : nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SIVI_SIMD")) {
    const std::string want(env);
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
      if (want == backend_name(b)) {
        if (const KernelTable* t = usable(b)) return t;
      }
    }
  }
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (const KernelTable* t = usable(b)) return t;
  }
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": size mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out;
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (const KernelTable* t = usable(b)) out.push_back(t);
  }
  return out;
}

void select(Backend backend) {
  const KernelTable* t = usable(backend);
  if (t == nullptr) {
    throw UnsupportedError("SIMD backend '" + std::string(backend_name(backend)) +
                           "' is not available on this build/CPU");
  }
  current().store(t, std::memory_order_relaxed);
}

void select(std::string_view name) {
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (name == backend_name(b)) {
      select(b);
      return;
    }
  }
  throw UnsupportedError("unknown SIMD backend '" + std::string(name) + "'");
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size(), "dot");
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size(), "axpy");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out) {
  require_same(x.size(), y.size(), "axpby");
  require_same(x.size(), out.size(), "axpby");
  active().axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

void clamp(std::span<const double> u, std::span<const double> lo,
           std::span<const double> hi, std::span<double> out) {
  require_same(u.size(), lo.size(), "clamp");
  require_same(u.size(), hi.size(), "clamp");
  require_same(u.size(), out.size(), "clamp");
  active().clamp(u.data(), lo.data(), hi.data(), out.data(), u.size());
}

void gemv(std::span<const double> m, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  require_same(m.size(), rows * cols, "gemv");
  require_same(x.size(), cols, "gemv");
  require_same(y.size(), rows, "gemv");
  active().gemv(m.data(), rows, cols, x.data(), y.data());
}

double orthant_step(std::span<const double> a, std::span<const double> phi,
                    double gamma, std::span<double> out) {
  require_same(a.size(), phi.size(), "orthant_step");
  require_same(a.size(), out.size(), "orthant_step");
  return active().orthant_step(a.data(), phi.data(), gamma, out.data(), a.size());
}

}  // namespace sivi::simd
