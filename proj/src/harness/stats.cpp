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

#include "sivi/harness/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "sivi/numkit/errors.hpp"

namespace sivi {

double student_t_quantile(double p, int dof) {
  if (dof < 1) throw DomainError("student_t_quantile: dof must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("student_t_quantile: p must be in (0, 1)");
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

MetricSummary summarize_metric(const std::vector<double>& values) {
  const std::size_t r = values.size();
  if (r < 2) throw DomainError("summarize_metric: need at least 2 values");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    // zero sample variance: keep mean and bounds bit-equal to the common value
    return MetricSummary{values.front(), 0.0, values.front(), values.front()};
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(r);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  MetricSummary s;
  s.mean = mean;
  s.stddev = std::sqrt(ss / static_cast<double>(r - 1));
  const double half =
      student_t_quantile(0.975, static_cast<int>(r - 1)) * s.stddev / std::sqrt(static_cast<double>(r));
  s.ci_low = mean - half;
  s.ci_high = mean + half;
  return s;
}

ReplicationStats summarize(std::vector<Trace> traces) {
  if (traces.size() < 2) throw DomainError("summarize: need at least 2 replications");
  std::sort(traces.begin(), traces.end(),
            [](const Trace& a, const Trace& b) { return a.stream_id < b.stream_id; });
  const std::size_t rows = traces.front().records.size();
  for (const Trace& t : traces) {
    if (t.records.size() != rows) throw DimensionError("summarize: traces record different k");
  }

  ReplicationStats stats;
  stats.replications = static_cast<int>(traces.size());
  std::vector<double> gap_norm(traces.size()), gap_sq(traces.size()), err(traces.size());
  for (std::size_t i = 0; i < rows; ++i) {
    const TraceRecord& first = traces.front().records[i];
    bool have_err = true;
    for (std::size_t r = 0; r < traces.size(); ++r) {
      const TraceRecord& rec = traces[r].records[i];
      if (rec.k != first.k) throw DimensionError("summarize: traces record different k");
      gap_norm[r] = rec.gap_norm;
      gap_sq[r] = rec.gap_norm * rec.gap_norm;
      have_err = have_err && rec.err.has_value();
      err[r] = rec.err.value_or(0.0);
    }
    StatsRow row;
    row.k = first.k;
    row.cum_samples = first.cumulative_samples;
    row.gap_norm = summarize_metric(gap_norm);
    row.gap_sq = summarize_metric(gap_sq);
    if (have_err) row.err = summarize_metric(err);
    stats.rows.push_back(row);
  }
  return stats;
}

ReplicationRun run_replications(const SiviProblem& problem, const SolverConfig& config,
                                int replications, int threads) {
  if (replications < 2) throw DomainError("run_replications: need R >= 2");
  validate(config);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, replications);

  std::vector<std::optional<Trace>> done(static_cast<std::size_t>(replications));
  std::vector<std::string> errors(static_cast<std::size_t>(replications));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < replications; r = next++) {
      try {
        done[static_cast<std::size_t>(r)] = solve(problem, config, static_cast<std::uint64_t>(r));
      } catch (const Error& e) {
        errors[static_cast<std::size_t>(r)] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ReplicationRun run;
  std::vector<ReplicationFailure> failures;
  for (int r = 0; r < replications; ++r) {
    if (done[static_cast<std::size_t>(r)]) {
      run.traces.push_back(std::move(*done[static_cast<std::size_t>(r)]));
    } else {
      failures.push_back({static_cast<std::uint64_t>(r), errors[static_cast<std::size_t>(r)]});
    }
  }
  if (run.traces.size() >= 2) run.stats = summarize(run.traces);
  run.stats.failures = std::move(failures);
  return run;
}

}  // namespace sivi
