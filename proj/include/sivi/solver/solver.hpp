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
#include <optional>
#include <vector>

#include "sivi/feasible/feasible.hpp"
#include "sivi/oracle/oracle.hpp"
#include "sivi/solver/problem.hpp"

namespace sivi {

enum class GapEvalMode {
  kExactMean,   // use the oracle's closed-form mean
  kMonteCarlo,  // fresh batch, independent of the update draws
};

enum class SamplingMode {
  kAggregated,  // oracle.sample_mean(): may draw the averaged law directly
  kPerDraw,     // batch_mean(): exactly N_k individual draws
};

struct SolverConfig {
  double eta = 1.0;
  int horizon = 100;
  BatchSchedule schedule;
  std::uint64_t master_seed = 1;
  GapEvalMode gap_mode = GapEvalMode::kExactMean;
  // Batch size of a Monte Carlo gap evaluation; 0 means 10 * N_k. The plug-in
  // estimate is biased by O(1/sqrt(M)).
  std::int64_t gap_mc_batch = 0;
  int record_every = 1;
  SamplingMode sampling = SamplingMode::kAggregated;
  double divergence_bound = 1e12;
};

void validate(const SolverConfig& config);

struct TraceRecord {
  int k = 0;
  Vector x;
  double gap_norm = 0.0;
  std::optional<double> err;  // ||x_k - x*|| when x* is known
  // Oracle samples consumed to produce x_k, plus Monte Carlo gap draws so far.
  std::int64_t cumulative_samples = 0;
  double wall_time = 0.0;  // seconds since solve() started
};

struct Trace {
  std::uint64_t stream_id = 0;
  double eta = 0.0;
  GapEvalMode gap_mode = GapEvalMode::kExactMean;
  std::vector<TraceRecord> records;
};

struct GapValue {
  Vector h;
  double norm = 0.0;
};

// H(x, eta) = (F(x) - P_X(F(x) - eta x)) / eta. Zero exactly at solutions.
GapValue gap(const Vector& x, double eta, const Vector& f_of_x, const FeasibleSet& set);

struct StepResult {
  Vector z;
  Vector x_next;
};

// z = P_X(g_bar - eta x), x_next = x - (g_bar - z) / eta.
StepResult vr_ipg_step(const Vector& x, const Vector& g_bar, double eta, const FeasibleSet& set);

// Runs the variance-reduced inverse projected gradient method for
// config.horizon iterations from problem.x0. Update draws come from stream
// (master_seed, stream_id); Monte Carlo gap draws from a fork of it. Records
// k = 0, every record_every-th k, and k = horizon. Throws DivergedError when
// an iterate is non-finite or exceeds divergence_bound in norm.
Trace solve(const SiviProblem& problem, const SolverConfig& config, std::uint64_t stream_id = 0);

}  // namespace sivi
