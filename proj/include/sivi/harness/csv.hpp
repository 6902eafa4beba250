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
#include <vector>

#include "sivi/harness/stats.hpp"
#include "sivi/solver/solver.hpp"

namespace sivi {

// Reals are written with 17 significant digits (round-trips exactly),
// integers in plain decimal; UTF-8 with LF line endings. A missing err is
// an empty field.
inline constexpr const char* kTraceCsvHeader = "k,cum_samples,gap_norm,err";
inline constexpr const char* kStatsCsvHeader = "k,cum_samples,metric,mean,ci_low,ci_high";

std::string format_real(double v);
double parse_real(const std::string& s);

// Throws Error carrying the path on I/O failure.
void export_csv(const Trace& trace, const std::filesystem::path& path);
void export_csv(const ReplicationStats& stats, const std::filesystem::path& path);

struct TraceCsvRow {
  int k = 0;
  std::int64_t cum_samples = 0;
  double gap_norm = 0.0;
  std::optional<double> err;
};

struct StatsCsvRow {
  int k = 0;
  std::int64_t cum_samples = 0;
  std::string metric;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

std::vector<TraceCsvRow> read_trace_csv(const std::filesystem::path& path);
std::vector<StatsCsvRow> read_stats_csv(const std::filesystem::path& path);

}  // namespace sivi
