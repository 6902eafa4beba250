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

#include <span>
#include <string_view>
#include <vector>

#include "sivi/numkit/kernel_table.hpp"

namespace sivi::simd {

// Kernel table used by every numkit operation. Chosen once on first use: the
// SIVI_SIMD environment variable (scalar | avx2 | neon) wins when set and
// available, otherwise the widest backend the CPU supports.
const KernelTable& active();

// Backends both compiled in and supported by the running CPU.
std::vector<const KernelTable*> available();

// Overrides the active backend; throws UnsupportedError when unavailable.
void select(Backend backend);
void select(std::string_view name);

std::string_view backend_name(Backend backend);

// Span front ends over the active table. Sizes are checked.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out);
void clamp(std::span<const double> u, std::span<const double> lo,
           std::span<const double> hi, std::span<double> out);
void gemv(std::span<const double> m, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
double orthant_step(std::span<const double> a, std::span<const double> phi,
                    double gamma, std::span<double> out);

}  // namespace sivi::simd
