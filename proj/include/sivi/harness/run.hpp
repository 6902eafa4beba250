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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sivi/harness/stats.hpp"
#include "sivi/problems/network.hpp"
#include "sivi/solver/solver.hpp"

namespace sivi {

inline constexpr const char* kVersionStamp = "sivi 1.0.0";

enum class ProblemKind { kExample1, kExample2, kCustom };

std::string_view problem_name(ProblemKind kind);

// Everything that determines the bytes of a run's CSV output. Thread count
// and output directory are deliberately absent: they do not change results.
struct RunRequest {
  ProblemKind problem = ProblemKind::kExample1;
  double eta = 4.0;
  double delta = 0.5;
  std::optional<std::int64_t> cap;
  int iters = 200;
  int reps = 20;
  std::uint64_t seed = 1;
  bool deterministic = false;
  int record_every = 1;
  GapEvalMode gap_mode = GapEvalMode::kExactMean;
  std::int64_t gap_mc_batch = 0;
  SamplingMode sampling = SamplingMode::kAggregated;
  DemandPriceSign inner_sign = DemandPriceSign::kStandard;
  ControlConvention control = ControlConvention::kIncentive;
  std::uint64_t model_seed = 1;
  // JSON description of a custom affine problem (ProblemKind::kCustom).
  std::string custom_problem_json;
  std::string simd_backend;  // empty: keep the active backend
};

// Ordered key/value lines, "key = value".
using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_key_values(const KeyValues& kv, const std::filesystem::path& path);
KeyValues read_key_values(const std::filesystem::path& path);
const std::string& lookup(const KeyValues& kv, const std::string& key);

struct BuiltProblem {
  SiviProblem problem;
  std::shared_ptr<const NetworkModel> model;  // example2 only
};

BuiltProblem build_problem(const RunRequest& request);
SolverConfig solver_config(const RunRequest& request);

// Custom affine problem: {"A", "b", "noise_sigma", "lo", "hi", "L", "bvec",
// "x0", "x_star"}; null bounds mean unbounded, L/bvec/x_star optional.
SiviProblem build_custom_problem(const std::string& json_text);

KeyValues run_metadata(const RunRequest& request, const BuiltProblem& built);
RunRequest request_from_metadata(const KeyValues& kv);

struct RunOutcome {
  std::filesystem::path trace_csv;
  std::optional<std::filesystem::path> stats_csv;
  std::filesystem::path metadata;
  std::vector<Trace> traces;  // completed replications
  std::optional<ReplicationStats> stats;
  std::vector<ReplicationFailure> failures;
  std::vector<std::string> warnings;
};

// Builds the problem, runs one solve (reps == 1) or R replications, and
// writes <name>_trace.csv (replication 0), <name>_stats.csv (R >= 2) and
// <name>_meta.txt into out_dir.
RunOutcome execute(const RunRequest& request, const std::filesystem::path& out_dir,
                   int threads = 0);

}  // namespace sivi
