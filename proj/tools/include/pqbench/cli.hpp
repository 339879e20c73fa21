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

#ifndef PQBENCH_CLI_HPP_
#define PQBENCH_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaxpq/bench/config.hpp"
#include "relaxpq/bench/runner.hpp"

namespace pqbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBoundViolation = 3;
inline constexpr int kExitConservation = 4;

// Bad flags or values. what() holds the diagnostic; usage() the help text.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::runtime_error(message), usage_(std::move(usage)) {}

  const std::string& usage() const { return usage_; }

 private:
  std::string usage_;
};

struct CliOptions {
  relaxpq::bench::BenchConfig config;
  std::string csv_path;
  // Replays an operation log CSV instead of running a benchmark.
  std::string replay_path;
  std::vector<std::string> warnings;
  bool help = false;
  std::string usage;
};

// Throws UsageError. The returned config has not been validated.
CliOptions parse_config(int argc, const char* const* argv);

// One CSV row per repetition.
struct CsvRow {
  std::string queue;
  std::optional<std::uint64_t> k;
  std::optional<std::uint32_t> c;
  std::uint32_t threads = 0;
  std::string workload;
  std::string keydist;
  std::uint64_t prefill = 0;
  double duration = 0.0;
  std::string repetition;  // index, or "summary"
  std::optional<std::uint64_t> ops_total;
  double mops_per_sec = 0.0;
  std::optional<double> rank_mean;
  std::optional<double> rank_std;
  std::optional<std::uint64_t> rank_max;
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> violations;
  std::optional<double> mops_ci95;
};

std::string csv_header();
std::string format_csv_row(const CsvRow& row);
CsvRow parse_csv_row(const std::string& line);

// Rows for every repetition followed by the summary row.
std::vector<CsvRow> report_rows(const relaxpq::bench::RunReport& report);

// Writes the CSV to `csv_path` (skipped when empty) and a table to `out`.
// Throws std::invalid_argument on an empty report and std::runtime_error if
// the file cannot be written.
void emit_report(const relaxpq::bench::RunReport& report, const std::string& csv_path,
                 std::ostream& out);

// Full program: parse, run, report. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pqbench

#endif  // PQBENCH_CLI_HPP_
