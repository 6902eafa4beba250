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

#include "sivi/harness/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sivi/harness/csv.hpp"
#include "sivi/harness/run.hpp"
#include "sivi/harness/verify.hpp"
#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"

namespace sivi {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunFlags {
  std::optional<double> eta;
  double delta = 0.5;
  std::optional<int> reps;
  std::optional<int> iters;
  std::uint64_t seed = 1;
  std::string cap = "none";
  bool deterministic = false;
  int record_every = 1;
  std::string out = "results";
  std::string gap_mode = "exact";
  std::string sampling = "aggregated";
  std::string inner_sign = "standard";
  std::string control = "incentive";
  std::uint64_t model_seed = 1;
  int threads = 0;
  std::string simd;
  std::string config;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool network, bool custom) {
  cmd->add_option("--eta", f.eta, "step size parameter (must exceed 1/(2 mu) for the rate bound)");
  cmd->add_option("--delta", f.delta, "batch growth exponent, N_k = ceil((k+1)^(2+2 delta))");
  cmd->add_option("--reps", f.reps, "replications (default 20, or 1 with --deterministic)");
  cmd->add_option("--iters", f.iters, "iteration horizon T");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--cap", f.cap, "batch size cap: <int> or none");
  cmd->add_flag("--deterministic", f.deterministic, "noise-free oracle");
  cmd->add_option("--record-every", f.record_every, "record every k-th iterate");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--gap-mode", f.gap_mode, "exact | mc | mc:M");
  cmd->add_option("--sampling", f.sampling, "aggregated | per-draw");
  cmd->add_option("--threads", f.threads, "worker threads for replications (0 = auto)");
  cmd->add_option("--simd", f.simd, "kernel backend: scalar | avx2 | neon");
  if (network) {
    cmd->add_option("--inner-sign", f.inner_sign, "demand price sign: standard | literal");
    cmd->add_option("--control", f.control, "control convention: incentive | tax");
    cmd->add_option("--model-seed", f.model_seed, "seed for the generated network data");
  }
  if (custom) cmd->add_option("config", f.config, "problem description (JSON)")->required();
}

template <typename T>
T parse_int(const std::string& s, const char* flag) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string(flag) + ": invalid value '" + s + "'");
  }
  return v;
}

RunRequest to_request(ProblemKind kind, const RunFlags& f) {
  RunRequest r;
  r.problem = kind;
  r.eta = f.eta.value_or(kind == ProblemKind::kExample1 ? 4.0 : 1.0);
  r.iters = f.iters.value_or(kind == ProblemKind::kExample2 ? 100 : 200);
  r.deterministic = f.deterministic;
  r.reps = f.reps.value_or(f.deterministic ? 1 : 20);
  r.delta = f.delta;
  r.seed = f.seed;
  r.record_every = f.record_every;
  if (f.cap != "none") r.cap = parse_int<std::int64_t>(f.cap, "--cap");

  if (f.gap_mode == "exact") {
    r.gap_mode = GapEvalMode::kExactMean;
  } else if (f.gap_mode == "mc") {
    r.gap_mode = GapEvalMode::kMonteCarlo;
  } else if (f.gap_mode.rfind("mc:", 0) == 0) {
    r.gap_mode = GapEvalMode::kMonteCarlo;
    r.gap_mc_batch = parse_int<std::int64_t>(f.gap_mode.substr(3), "--gap-mode");
    if (r.gap_mc_batch < 1) throw UsageError("--gap-mode: M must be positive");
  } else {
    throw UsageError("--gap-mode: expected exact, mc or mc:M");
  }

  if (f.sampling == "aggregated") {
    r.sampling = SamplingMode::kAggregated;
  } else if (f.sampling == "per-draw") {
    r.sampling = SamplingMode::kPerDraw;
  } else {
    throw UsageError("--sampling: expected aggregated or per-draw");
  }

  if (f.inner_sign == "standard") {
    r.inner_sign = DemandPriceSign::kStandard;
  } else if (f.inner_sign == "literal") {
    r.inner_sign = DemandPriceSign::kLiteral;
  } else {
    throw UsageError("--inner-sign: expected standard or literal");
  }
  if (f.control == "incentive") {
    r.control = ControlConvention::kIncentive;
  } else if (f.control == "tax") {
    r.control = ControlConvention::kTax;
  } else {
    throw UsageError("--control: expected incentive or tax");
  }
  r.model_seed = f.model_seed;

  if (r.reps < 1) throw UsageError("--reps must be at least 1");
  if (r.iters < 0) throw UsageError("--iters must be nonnegative");
  if (r.record_every < 1) throw UsageError("--record-every must be at least 1");
  if (!(r.eta > 0.0)) throw UsageError("--eta must be positive");
  if (!(r.delta > 0.0)) throw UsageError("--delta must be positive");
  if (r.cap && *r.cap < 1) throw UsageError("--cap must be at least 1");
  if (f.threads < 0) throw UsageError("--threads must be nonnegative");

  if (!f.simd.empty()) {
    try {
      simd::select(f.simd);
    } catch (const Error& e) {
      throw UsageError(std::string("--simd: ") + e.what());
    }
  }

  if (kind == ProblemKind::kCustom) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw UsageError("cannot read problem file '" + f.config + "'");
    std::ostringstream text;
    text << in.rdbuf();
    r.custom_problem_json = text.str();
    try {
      (void)build_custom_problem(r.custom_problem_json);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return r;
}

int run_command(ProblemKind kind, const RunFlags& flags, std::ostream& out, std::ostream& err) {
  const RunRequest request = to_request(kind, flags);
  const RunOutcome outcome = execute(request, flags.out, flags.threads);
  for (const std::string& w : outcome.warnings) err << "warning: " << w << '\n';

  out << problem_name(kind) << ": eta=" << format_real(request.eta)
      << " delta=" << format_real(request.delta) << " T=" << request.iters
      << " reps=" << request.reps << " seed=" << request.seed
      << " simd=" << simd::active().name << '\n';
  if (!outcome.traces.empty()) {
    const TraceRecord& last = outcome.traces.front().records.back();
    out << "  replication 0 final: k=" << last.k << " gap_norm=" << format_real(last.gap_norm);
    if (last.err) out << " err=" << format_real(*last.err);
    out << '\n';
  }
  if (outcome.stats && !outcome.stats->rows.empty()) {
    const StatsRow& row = outcome.stats->rows.back();
    out << "  mean final gap_norm=" << format_real(row.gap_norm.mean) << " 95% CI ["
        << format_real(row.gap_norm.ci_low) << ", " << format_real(row.gap_norm.ci_high) << "]\n";
  }
  out << "  wrote " << outcome.trace_csv.string() << '\n';
  if (outcome.stats_csv) out << "  wrote " << outcome.stats_csv->string() << '\n';
  out << "  wrote " << outcome.metadata.string() << '\n';

  if (!outcome.failures.empty()) {
    err << "error: " << outcome.failures.size() << " replication(s) failed:\n";
    for (const ReplicationFailure& f : outcome.failures) {
      err << "  stream " << f.stream_id << ": " << f.message << '\n';
    }
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variance-reduced inverse projection gradient solver for stochastic inverse VIs"};
  app.name("sivi");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersionStamp);

  RunFlags ex1_flags, ex2_flags, solve_flags;
  CLI::App* ex1 = app.add_subcommand("example1", "3-dimensional affine test problem on a box");
  add_run_flags(ex1, ex1_flags, false, false);
  CLI::App* ex2 = app.add_subcommand("example2", "spatial price network with polyhedral controls");
  add_run_flags(ex2, ex2_flags, true, false);
  CLI::App* cus = app.add_subcommand("solve", "custom affine problem from a JSON file");
  add_run_flags(cus, solve_flags, false, true);

  VerifyOptions verify_options;
  CLI::App* ver = app.add_subcommand("verify", "run the invariant suites");
  ver->add_option("--seed", verify_options.seed, "seed for random test data");
  ver->add_option("--pairs", verify_options.projection_pairs, "random pairs per projection check");

  if (argc <= 1) {
    err << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersionStamp << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (ex1->parsed()) return run_command(ProblemKind::kExample1, ex1_flags, out, err);
    if (ex2->parsed()) return run_command(ProblemKind::kExample2, ex2_flags, out, err);
    if (cus->parsed()) return run_command(ProblemKind::kCustom, solve_flags, out, err);
    if (ver->parsed()) {
      const int failures = report(run_invariant_suites(verify_options), out);
      return failures == 0 ? kExitOk : kExitNumeric;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace sivi
