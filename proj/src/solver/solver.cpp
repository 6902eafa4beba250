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

#include "sivi/solver/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"

namespace sivi {

SiviProblem make_problem(std::string name, std::shared_ptr<const StochasticOracle> oracle,
                         FeasibleSet set, Vector x0, std::optional<Vector> x_star) {
  if (!oracle) throw ConstructionError("make_problem: null oracle");
  if (oracle->dimension() != set.dimension() || x0.size() != set.dimension()) {
    throw DimensionError("make_problem: oracle dimension " + std::to_string(oracle->dimension()) +
                         ", set dimension " + std::to_string(set.dimension()) + ", x0 size " +
                         std::to_string(x0.size()));
  }
  if (!all_finite(x0.span())) throw ConstructionError("make_problem: x0 is not finite");
  if (x_star && x_star->size() != x0.size()) throw DimensionError("make_problem: x* dimension");

  SiviProblem p{std::move(name), std::move(oracle), std::move(set), std::move(x0),
                std::move(x_star), {}};
  if (!p.set.contains(p.x0)) {
    p.warnings.push_back("x0 lies outside X; iterates are not projected, so this is allowed");
  }
  return p;
}

void validate(const SolverConfig& config) {
  if (!(config.eta > 0.0) || !std::isfinite(config.eta)) throw DomainError("eta must be > 0");
  if (config.horizon < 0) throw DomainError("horizon must be >= 0");
  if (!(config.schedule.delta > 0.0)) throw DomainError("delta must be > 0");
  if (config.schedule.cap && *config.schedule.cap < 1) throw DomainError("batch cap must be >= 1");
  if (config.record_every < 1) throw DomainError("record_every must be >= 1");
  if (config.gap_mc_batch < 0) throw DomainError("Monte Carlo gap batch must be >= 0");
}

GapValue gap(const Vector& x, double eta, const Vector& f_of_x, const FeasibleSet& set) {
  if (!(eta > 0.0)) throw DomainError("gap: eta must be > 0");
  const Vector p = set.project(axpby(1.0, f_of_x, -eta, x));
  GapValue g{axpby(1.0 / eta, f_of_x, -1.0 / eta, p), 0.0};
  g.norm = norm(g.h);
  return g;
}

StepResult vr_ipg_step(const Vector& x, const Vector& g_bar, double eta, const FeasibleSet& set) {
  if (!(eta > 0.0)) throw DomainError("vr_ipg_step: eta must be > 0");
  if (x.size() != g_bar.size()) throw DimensionError("vr_ipg_step: x and g_bar sizes differ");
  StepResult r;
  r.z = set.project(axpby(1.0, g_bar, -eta, x));
  // x - (g_bar - z) / eta
  r.x_next = x - (1.0 / eta) * (g_bar - r.z);
  return r;
}

Trace solve(const SiviProblem& problem, const SolverConfig& config, std::uint64_t stream_id) {
  validate(config);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const std::unique_ptr<StochasticOracle> oracle = problem.oracle->clone();
  RngStream rng(config.master_seed, stream_id);
  RngStream gap_rng = rng.fork(1);

  Trace trace;
  trace.stream_id = stream_id;
  trace.eta = config.eta;
  trace.gap_mode = (config.gap_mode == GapEvalMode::kExactMean && oracle->has_exact_mean())
                       ? GapEvalMode::kExactMean
                       : GapEvalMode::kMonteCarlo;

  Vector x = problem.x0;
  std::int64_t samples = 0;
  for (int k = 0;; ++k) {
    if (k % config.record_every == 0 || k == config.horizon) {
      Vector f;
      if (trace.gap_mode == GapEvalMode::kExactMean) {
        f = oracle->exact_mean(x);
      } else {
        const std::int64_t m = config.gap_mc_batch > 0
                                   ? config.gap_mc_batch
                                   : 10 * batch_size(config.schedule, k);
        f = oracle->sample_mean(x, m, gap_rng);
        samples += m;
      }
      TraceRecord rec;
      rec.k = k;
      rec.gap_norm = gap(x, config.eta, f, problem.set).norm;
      if (problem.x_star) rec.err = distance(x, *problem.x_star);
      rec.cumulative_samples = samples;
      rec.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
      rec.x = x;
      trace.records.push_back(std::move(rec));
    }
    if (k == config.horizon) break;

    const std::int64_t n = batch_size(config.schedule, k);
    const Vector g_bar = config.sampling == SamplingMode::kAggregated
                             ? oracle->sample_mean(x, n, rng)
                             : batch_mean(*oracle, x, n, rng);
    samples += n;
    if (!all_finite(g_bar.span())) throw NumericError("solve: non-finite batch mean", k);

    x = vr_ipg_step(x, g_bar, config.eta, problem.set).x_next;
    if (!all_finite(x.span()) || norm(x) > config.divergence_bound) {
      throw DivergedError("solve: iterate left the divergence bound", k + 1);
    }
  }
  return trace;
}

}  // namespace sivi
