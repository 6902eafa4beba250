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

#include "sivi/harness/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sivi/numkit/errors.hpp"

namespace sivi {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                const std::string& header, std::size_t width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error("'" + path.string() + "': unexpected header");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    auto fields = split(line);
    if (fields.size() != width) throw Error("'" + path.string() + "': malformed row '" + line + "'");
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <typename Int>
Int parse_int(const std::string& s) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("bad integer '" + s + "'");
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_real failed");
  return std::string(buf, ptr);
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("bad real '" + s + "'");
  return v;
}

void export_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kTraceCsvHeader << '\n';
  for (const TraceRecord& r : trace.records) {
    out << r.k << ',' << r.cumulative_samples << ',' << format_real(r.gap_norm) << ','
        << (r.err ? format_real(*r.err) : std::string()) << '\n';
  }
  finish(out, path);
}

void export_csv(const ReplicationStats& stats, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kStatsCsvHeader << '\n';
  auto row = [&](const StatsRow& r, const char* metric, const MetricSummary& m) {
    out << r.k << ',' << r.cum_samples << ',' << metric << ',' << format_real(m.mean) << ','
        << format_real(m.ci_low) << ',' << format_real(m.ci_high) << '\n';
  };
  for (const StatsRow& r : stats.rows) {
    row(r, "gap_norm", r.gap_norm);
    row(r, "gap_sq", r.gap_sq);
    if (r.err) row(r, "err", *r.err);
  }
  finish(out, path);
}

std::vector<TraceCsvRow> read_trace_csv(const std::filesystem::path& path) {
  std::vector<TraceCsvRow> rows;
  for (const auto& f : read_rows(path, kTraceCsvHeader, 4)) {
    TraceCsvRow r;
    r.k = parse_int<int>(f[0]);
    r.cum_samples = parse_int<std::int64_t>(f[1]);
    r.gap_norm = parse_real(f[2]);
    if (!f[3].empty()) r.err = parse_real(f[3]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<StatsCsvRow> read_stats_csv(const std::filesystem::path& path) {
  std::vector<StatsCsvRow> rows;
  for (const auto& f : read_rows(path, kStatsCsvHeader, 6)) {
    rows.push_back(StatsCsvRow{parse_int<int>(f[0]), parse_int<std::int64_t>(f[1]), f[2],
                               parse_real(f[3]), parse_real(f[4]), parse_real(f[5])});
  }
  return rows;
}

}  // namespace sivi
