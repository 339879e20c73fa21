// Copyright 2026 The relaxpq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "pqbench/cli.hpp"

namespace pqbench {

namespace rb = relaxpq::bench;

namespace {

constexpr const char* kColumns[] = {
    "queue",     "k",         "c",        "threads",  "workload",  "keydist",
    "prefill",   "duration",  "repetition", "ops_total", "mops_per_sec", "rank_mean",
    "rank_std",  "rank_max",  "bound",    "violations", "mops_ci95"};
constexpr std::size_t kColumnCount = std::size(kColumns);

template <class T>
std::string opt_str(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class T>
T parse_num(const std::string& s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad numeric CSV field '" + s + "'");
  }
  return v;
}

template <class T>
std::optional<T> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_num<T>(s);
}

CsvRow base_row(const rb::BenchConfig& cfg) {
  CsvRow row;
  row.queue = std::string(rb::to_string(cfg.queue));
  if (cfg.queue == rb::QueueKind::kKlsm) row.k = cfg.k;
  if (cfg.queue == rb::QueueKind::kMultiQueue) row.c = cfg.c;
  row.threads = cfg.threads;
  row.workload = std::string(relaxpq::to_string(cfg.workload.kind));
  row.keydist = std::string(relaxpq::to_string(cfg.keys.kind));
  row.prefill = cfg.prefill;
  row.duration = cfg.duration_s;
  return row;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i > 0) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string format_csv_row(const CsvRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.queue, opt_str(r.k),
                     opt_str(r.c), r.threads, r.workload, r.keydist, r.prefill, r.duration,
                     r.repetition, opt_str(r.ops_total), r.mops_per_sec, opt_str(r.rank_mean),
                     opt_str(r.rank_std), opt_str(r.rank_max), opt_str(r.bound),
                     opt_str(r.violations), opt_str(r.mops_ci95));
}

CsvRow parse_csv_row(const std::string& line) {
  const std::vector<std::string> f = split(line);
  if (f.size() != kColumnCount) {
    throw std::invalid_argument(fmt::format("CSV row has {} fields, expected {}", f.size(),
                                            kColumnCount));
  }
  CsvRow r;
  r.queue = f[0];
  r.k = parse_opt<std::uint64_t>(f[1]);
  r.c = parse_opt<std::uint32_t>(f[2]);
  r.threads = parse_num<std::uint32_t>(f[3]);
  r.workload = f[4];
  r.keydist = f[5];
  r.prefill = parse_num<std::uint64_t>(f[6]);
  r.duration = parse_num<double>(f[7]);
  r.repetition = f[8];
  r.ops_total = parse_opt<std::uint64_t>(f[9]);
  r.mops_per_sec = parse_num<double>(f[10]);
  r.rank_mean = parse_opt<double>(f[11]);
  r.rank_std = parse_opt<double>(f[12]);
  r.rank_max = parse_opt<std::uint64_t>(f[13]);
  r.bound = parse_opt<std::uint64_t>(f[14]);
  r.violations = parse_opt<std::uint64_t>(f[15]);
  r.mops_ci95 = parse_opt<double>(f[16]);
  return r;
}

std::vector<CsvRow> report_rows(const rb::RunReport& report) {
  const auto& reps = report.throughput.repetitions;
  if (reps.empty()) throw std::invalid_argument("emit_report: no repetitions to report");
  std::vector<CsvRow> rows;
  for (const auto& rep : reps) {
    CsvRow row = base_row(report.config);
    row.repetition = std::to_string(rep.repetition);
    row.ops_total = rep.total_ops;
    row.mops_per_sec = rep.ops_per_sec / 1e6;
    if (rep.ranks) {
      row.rank_mean = rep.ranks->mean;
      row.rank_std = rep.ranks->stddev;
      row.rank_max = rep.ranks->max;
      row.bound = rep.ranks->bound;
      row.violations = rep.ranks->violations;
    }
    rows.push_back(std::move(row));
  }

  CsvRow sum = base_row(report.config);
  sum.repetition = "summary";
  sum.mops_per_sec = report.throughput.ops_per_sec.mean / 1e6;
  if (report.throughput.ops_per_sec.ci95) sum.mops_ci95 = *report.throughput.ops_per_sec.ci95 / 1e6;
  if (report.rank_mean) {
    sum.rank_mean = report.rank_mean->mean;
    std::uint64_t max = 0;
    for (const auto& rep : reps) max = std::max(max, rep.ranks ? rep.ranks->max : 0);
    sum.rank_max = max;
    sum.bound = report.bound;
    sum.violations = report.violations();
  }
  rows.push_back(std::move(sum));
  return rows;
}

void emit_report(const rb::RunReport& report, const std::string& csv_path, std::ostream& out) {
  const std::vector<CsvRow> rows = report_rows(report);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open CSV output " + csv_path);
    csv << csv_header() << '\n';
    for (const auto& row : rows) csv << format_csv_row(row) << '\n';
    csv.flush();
    if (!csv) throw std::runtime_error("failed writing CSV output " + csv_path);
  }

  const rb::BenchConfig& cfg = report.config;
  out << fmt::format("queue={} threads={} workload={} keys={} prefill={} duration={}s mode={}\n",
                     rows.front().queue, cfg.threads, rows.front().workload,
                     rows.front().keydist, cfg.prefill, cfg.duration_s, rb::to_string(cfg.mode));
  const bool quality = report.rank_mean.has_value();
  out << fmt::format("{:>8} {:>14} {:>10}", "rep", "ops", "MOps/s");
  if (quality) out << fmt::format(" {:>10} {:>10} {:>10} {:>6}", "rank_mean", "rank_std", "rank_max", "viol");
  out << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{:>8} {:>14} {:>10.3f}", r.repetition, opt_str(r.ops_total),
                       r.mops_per_sec);
    if (quality) {
      out << fmt::format(" {:>10} {:>10} {:>10} {:>6}",
                         r.rank_mean ? fmt::format("{:.2f}", *r.rank_mean) : "",
                         r.rank_std ? fmt::format("{:.2f}", *r.rank_std) : "",
                         opt_str(r.rank_max), opt_str(r.violations));
    }
    if (r.mops_ci95) out << fmt::format("  +/- {:.3f}", *r.mops_ci95);
    out << '\n';
  }
  if (report.bound) out << fmt::format("rank bound {}\n", *report.bound);
}

}  // namespace pqbench
