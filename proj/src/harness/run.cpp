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

#include "sivi/harness/run.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sivi/harness/csv.hpp"
#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"
#include "sivi/numkit/rng.hpp"
#include "sivi/problems/example1.hpp"

namespace sivi {
namespace {

using nlohmann::json;

std::string join(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += format_real(v[i]);
  }
  return s;
}

std::string join(const Matrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r > 0) s += " ; ";
    s += join(Vector(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return s;
}

template <typename T>
T parse_number(const std::string& s, const std::string& key) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("metadata: bad value for '" + key + "': '" + s + "'");
  }
  return v;
}

Vector json_vector(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("problem file: missing '") + key + "'");
  std::vector<double> v;
  for (const auto& e : j.at(key)) v.push_back(e.get<double>());
  return Vector(std::move(v));
}

Vector json_bounds(const json& j, const char* key, std::size_t n, double unbounded) {
  if (!j.contains(key)) return Vector(n, unbounded);
  Vector v(n);
  const auto& arr = j.at(key);
  if (arr.size() != n) throw DimensionError(std::string("problem file: '") + key + "' size");
  for (std::size_t i = 0; i < n; ++i) v[i] = arr[i].is_null() ? unbounded : arr[i].get<double>();
  return v;
}

Matrix json_matrix(const json& j, const char* key) {
  const auto& rows = j.at(key);
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError(std::string("problem file: ragged '") + key + "'");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return m;
}

std::string gap_mode_string(const RunRequest& r) {
  if (r.gap_mode == GapEvalMode::kExactMean) return "exact";
  return r.gap_mc_batch > 0 ? "mc:" + std::to_string(r.gap_mc_batch) : "mc";
}

}  // namespace

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kExample1:
      return "example1";
    case ProblemKind::kExample2:
      return "example2";
    case ProblemKind::kCustom:
      return "solve";
  }
  return "unknown";
}

void write_key_values(const KeyValues& kv, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << "# sivi run metadata\n";
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) throw Error("metadata: malformed line '" + line + "'");
    kv.emplace_back(line.substr(0, pos), line.substr(pos + 3));
  }
  return kv;
}

const std::string& lookup(const KeyValues& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  throw Error("metadata: missing key '" + key + "'");
}

SiviProblem build_custom_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("problem file: ") + e.what());
  }
  try {
    const Matrix a = json_matrix(j, "A");
    const Vector b = json_vector(j, "b");
    const std::size_t n = b.size();
    const double sigma = j.value("noise_sigma", 1.0);
    BoxSet box(json_bounds(j, "lo", n, -kInf), json_bounds(j, "hi", n, kInf));
    const Vector x0 = j.contains("x0") ? json_vector(j, "x0") : Vector(n, 0.0);
    std::optional<Vector> x_star;
    if (j.contains("x_star")) x_star = json_vector(j, "x_star");
    auto oracle = std::make_shared<AdditiveNoiseOracle>(std::make_unique<AffineMap>(a, b), sigma);
    const std::string name = j.value("name", std::string("custom"));
    if (j.contains("L")) {
      PolyhedronSet poly(std::move(box), json_matrix(j, "L"), json_vector(j, "bvec"));
      return make_problem(name, std::move(oracle), FeasibleSet(std::move(poly)), x0, x_star);
    }
    return make_problem(name, std::move(oracle), FeasibleSet(std::move(box)), x0, x_star);
  } catch (const json::exception& e) {
    throw Error(std::string("problem file: ") + e.what());
  }
}

BuiltProblem build_problem(const RunRequest& request) {
  switch (request.problem) {
    case ProblemKind::kExample1: {
      Example1Spec spec;
      spec.noise_sigma = request.deterministic ? 0.0 : 1.0;
      return BuiltProblem{build_example1(spec), nullptr};
    }
    case ProblemKind::kExample2: {
      NetworkOptions options;
      options.demand_sign = request.inner_sign;
      options.control = request.control;
      options.noise_sigma = request.deterministic ? 0.0 : 1.0;
      Example2 ex = build_example2(request.model_seed, options);
      return BuiltProblem{std::move(ex.problem), std::move(ex.model)};
    }
    case ProblemKind::kCustom: {
      SiviProblem p = build_custom_problem(request.custom_problem_json);
      if (request.deterministic) {
        const auto* noisy = dynamic_cast<const AdditiveNoiseOracle*>(p.oracle.get());
        p.oracle = std::make_shared<AdditiveNoiseOracle>(noisy->map().clone(), 0.0);
      }
      return BuiltProblem{std::move(p), nullptr};
    }
  }
  throw Error("unknown problem kind");
}

SolverConfig solver_config(const RunRequest& request) {
  SolverConfig c;
  c.eta = request.eta;
  c.horizon = request.iters;
  c.schedule = BatchSchedule{request.delta, request.cap};
  c.master_seed = request.seed;
  c.gap_mode = request.gap_mode;
  c.gap_mc_batch = request.gap_mc_batch;
  c.record_every = request.record_every;
  c.sampling = request.sampling;
  validate(c);
  return c;
}

KeyValues run_metadata(const RunRequest& r, const BuiltProblem& built) {
  KeyValues kv;
  auto put = [&](std::string k, std::string v) { kv.emplace_back(std::move(k), std::move(v)); };
  put("version", kVersionStamp);
  put("rng", kRngVersion);
  put("simd_backend", std::string(simd::active().name));
  put("command", std::string(problem_name(r.problem)));
  put("eta", format_real(r.eta));
  put("delta", format_real(r.delta));
  put("cap", r.cap ? std::to_string(*r.cap) : "none");
  put("schedule", "N_k = min(cap, ceil((k+1)^(2+2*delta)))");
  put("iters", std::to_string(r.iters));
  put("reps", std::to_string(r.reps));
  put("seed", std::to_string(r.seed));
  put("deterministic", r.deterministic ? "true" : "false");
  put("record_every", std::to_string(r.record_every));
  put("gap_mode", gap_mode_string(r));
  put("sampling", r.sampling == SamplingMode::kAggregated ? "aggregated" : "per-draw");
  put("x0", join(built.problem.x0));
  put("x_star", built.problem.x_star ? join(*built.problem.x_star) : "none");
  if (r.problem == ProblemKind::kCustom) put("problem_json", json::parse(r.custom_problem_json).dump());
  if (r.problem == ProblemKind::kExample2) {
    const NetworkModel& m = *built.model;
    put("inner_sign", r.inner_sign == DemandPriceSign::kStandard ? "standard" : "literal");
    put("control", r.control == ControlConvention::kIncentive ? "incentive" : "tax");
    put("model_seed", std::to_string(r.model_seed));
    put("model.m", std::to_string(m.m));
    put("model.n", std::to_string(m.n));
    put("model.q", std::to_string(m.q));
    put("model.c", join(m.c));
    put("model.tau", join(m.tau));
    put("model.a_coef", join(m.a_coef));
    put("model.a0", join(m.a0));
    put("model.rho", join(m.rho));
    put("model.rho0", join(m.rho0));
    put("model.alpha", join(m.alpha));
    put("model.beta", join(m.beta));
    put("model.f_min", join(m.f_min));
    put("model.f_max", join(m.f_max));
    put("model.L", join(m.l));
    put("model.b", join(m.b));
    put("model.L_rule", "L_ij ~ U[0,1]; b = L f_min + L (f_max - f_min) / 2");
    put("model.inner_step", format_real(m.inner_step));
  }
  return kv;
}

RunRequest request_from_metadata(const KeyValues& kv) {
  RunRequest r;
  const std::string& cmd = lookup(kv, "command");
  if (cmd == "example1") {
    r.problem = ProblemKind::kExample1;
  } else if (cmd == "example2") {
    r.problem = ProblemKind::kExample2;
  } else if (cmd == "solve") {
    r.problem = ProblemKind::kCustom;
    r.custom_problem_json = lookup(kv, "problem_json");
  } else {
    throw Error("metadata: unknown command '" + cmd + "'");
  }
  r.eta = parse_number<double>(lookup(kv, "eta"), "eta");
  r.delta = parse_number<double>(lookup(kv, "delta"), "delta");
  const std::string& cap = lookup(kv, "cap");
  if (cap != "none") r.cap = parse_number<std::int64_t>(cap, "cap");
  r.iters = parse_number<int>(lookup(kv, "iters"), "iters");
  r.reps = parse_number<int>(lookup(kv, "reps"), "reps");
  r.seed = parse_number<std::uint64_t>(lookup(kv, "seed"), "seed");
  r.deterministic = lookup(kv, "deterministic") == "true";
  r.record_every = parse_number<int>(lookup(kv, "record_every"), "record_every");
  const std::string& gm = lookup(kv, "gap_mode");
  if (gm == "exact") {
    r.gap_mode = GapEvalMode::kExactMean;
  } else {
    r.gap_mode = GapEvalMode::kMonteCarlo;
    if (gm.rfind("mc:", 0) == 0) r.gap_mc_batch = parse_number<std::int64_t>(gm.substr(3), "gap_mode");
  }
  r.sampling = lookup(kv, "sampling") == "per-draw" ? SamplingMode::kPerDraw : SamplingMode::kAggregated;
  if (r.problem == ProblemKind::kExample2) {
    r.inner_sign = lookup(kv, "inner_sign") == "literal" ? DemandPriceSign::kLiteral
                                                          : DemandPriceSign::kStandard;
    r.control = lookup(kv, "control") == "tax" ? ControlConvention::kTax : ControlConvention::kIncentive;
    r.model_seed = parse_number<std::uint64_t>(lookup(kv, "model_seed"), "model_seed");
  }
  r.simd_backend = lookup(kv, "simd_backend");
  return r;
}

RunOutcome execute(const RunRequest& request, const std::filesystem::path& out_dir, int threads) {
  if (!request.simd_backend.empty()) simd::select(request.simd_backend);
  BuiltProblem built = build_problem(request);
  const SolverConfig config = solver_config(request);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  const std::string name(problem_name(request.problem));
  RunOutcome outcome;
  outcome.warnings = built.problem.warnings;
  outcome.trace_csv = out_dir / (name + "_trace.csv");
  outcome.metadata = out_dir / (name + "_meta.txt");

  if (request.reps >= 2) {
    ReplicationRun run = run_replications(built.problem, config, request.reps, threads);
    outcome.failures = run.stats.failures;
    if (run.traces.size() >= 2) {
      outcome.stats_csv = out_dir / (name + "_stats.csv");
      export_csv(run.stats, *outcome.stats_csv);
      outcome.stats = std::move(run.stats);
    }
    outcome.traces = std::move(run.traces);
  } else {
    outcome.traces.push_back(solve(built.problem, config, 0));
  }
  if (!outcome.traces.empty()) export_csv(outcome.traces.front(), outcome.trace_csv);
  write_key_values(run_metadata(request, built), outcome.metadata);
  return outcome;
}

}  // namespace sivi
