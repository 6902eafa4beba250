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
#include <string>
#include <vector>

#include "sivi/solver/solver.hpp"

namespace sivi {

// Two-sided Student-t quantile t_{p}(dof).
double student_t_quantile(double p, int dof);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (R - 1 denominator)
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Mean and 95% Student-t interval with R - 1 degrees of freedom.
MetricSummary summarize_metric(const std::vector<double>& values);

struct StatsRow {
  int k = 0;
  std::int64_t cum_samples = 0;
  MetricSummary gap_norm;
  MetricSummary gap_sq;
  std::optional<MetricSummary> err;
};

struct ReplicationFailure {
  std::uint64_t stream_id = 0;
  std::string message;
};

struct ReplicationStats {
  int replications = 0;  // completed replications the rows are built from
  std::vector<StatsRow> rows;
  std::vector<ReplicationFailure> failures;
};

// Per-record statistics over traces that share a record schedule. Traces
// are combined in stream-id order, so the result does not depend on the
// order they were produced in. Throws DomainError for fewer than 2 traces.
ReplicationStats summarize(std::vector<Trace> traces);

struct ReplicationRun {
  std::vector<Trace> traces;  // completed replications, by stream id
  ReplicationStats stats;
};

// R independent solves from the same x0; replication r uses stream id r.
// Runs on up to `threads` workers (0 = hardware concurrency). Diverged
// replications are listed in stats.failures and excluded from the rows.
ReplicationRun run_replications(const SiviProblem& problem, const SolverConfig& config,
                                int replications, int threads = 0);

}  // namespace sivi
