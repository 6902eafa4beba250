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

#include <cstdint>
#include <random>
#include <span>

#include "sivi/numkit/linalg.hpp"

namespace sivi {

// Identifies the generator and the uniform/normal transforms. Bump whenever
// any of them changes: recorded traces are only reproducible under the same
// version.
inline constexpr const char* kRngVersion = "mt19937_64/splitmix64-seed/box-muller-v1";

// Deterministic random stream keyed by (master_seed, stream_id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard; the standard library distributions are not, so the uniform and
// Gaussian transforms are implemented here. Distinct stream ids are mixed
// through SplitMix64 before seeding.
//
// Single owner: copy to fork, never share across threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Standard normal.
  double gaussian();
  void gaussian_fill(std::span<double> out);

  // Number of Gaussian variates handed out so far.
  std::uint64_t gaussians_drawn() const { return gaussians_drawn_; }

  // Independent stream for a sub-purpose of this one (e.g. gap evaluation
  // draws next to update draws).
  RngStream fork(std::uint64_t tag) const;

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
  std::uint64_t gaussians_drawn_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// n i.i.d. standard normal draws.
Vector gaussian_vector(RngStream& rng, std::size_t n);

}  // namespace sivi
