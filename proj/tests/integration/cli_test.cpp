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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "pqbench/cli.hpp"

namespace pqbench {
namespace {

namespace rb = relaxpq::bench;

CliOptions parse(std::vector<std::string> args) {
  std::vector<const char*> argv = {"pqbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv = {"pqbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

TEST(ParseConfig, Defaults) {
  const auto o = parse({});
  EXPECT_EQ(o.config.queue, rb::QueueKind::kKlsm);
  EXPECT_EQ(o.config.k, 256u);
  EXPECT_EQ(o.config.c, 4u);
  EXPECT_EQ(o.config.prefill, 1000000u);
  EXPECT_DOUBLE_EQ(o.config.duration_s, 10.0);
  EXPECT_EQ(o.config.repetitions, 30u);
  EXPECT_EQ(o.config.mode, rb::Mode::kThroughput);
}

TEST(ParseConfig, QualityKlsm) {
  const auto o = parse({"--queue", "klsm", "--k", "128", "--threads", "4", "--mode", "quality"});
  EXPECT_NO_THROW(rb::validate(o.config));
  EXPECT_EQ(rb::rank_bound(o.config), 513u);
  EXPECT_TRUE(o.config.checks_enabled());
  EXPECT_TRUE(o.warnings.empty());
}

TEST(ParseConfig, MultiQueueDefaultC) {
  const auto o = parse({"--queue", "multiq", "--threads", "8"});
  EXPECT_EQ(std::uint64_t{o.config.c} * o.config.threads, 32u);
}

TEST(ParseConfig, AllFlags) {
  const auto o = parse({"--queue", "globallock", "--c", "2", "--threads", "3", "--workload",
                        "split", "--keys", "descending", "--prefill", "7", "--duration-s", "2",
                        "--reps", "5", "--seed", "99", "--csv", "x.csv", "--unique-keys",
                        "--no-self-checks", "--no-pin", "--insert-prob", "0.25"});
  EXPECT_EQ(o.config.queue, rb::QueueKind::kGlobalLock);
  EXPECT_EQ(o.config.c, 2u);
  EXPECT_EQ(o.config.threads, 3u);
  EXPECT_EQ(o.config.workload.kind, relaxpq::WorkloadKind::kSplit);
  EXPECT_EQ(o.config.keys.kind, relaxpq::KeyDistKind::kDescending);
  EXPECT_EQ(o.config.prefill, 7u);
  EXPECT_DOUBLE_EQ(o.config.duration_s, 2.0);
  EXPECT_EQ(o.config.repetitions, 5u);
  EXPECT_EQ(o.config.seed, 99u);
  EXPECT_EQ(o.csv_path, "x.csv");
  EXPECT_TRUE(o.config.keys.unique);
  EXPECT_EQ(o.config.self_checks, false);
  EXPECT_FALSE(o.config.pin_threads);
  EXPECT_DOUBLE_EQ(o.config.workload.insert_probability, 0.25);
}

TEST(ParseConfig, KIgnoredForOtherQueues) {
  const auto o = parse({"--queue", "multiq", "--k", "64"});
  ASSERT_EQ(o.warnings.size(), 1u);
  EXPECT_NE(o.warnings[0].find("--k"), std::string::npos);
}

TEST(ParseConfig, BadValuesAreUsageErrors) {
  EXPECT_THROW(parse({"--workload", "nope"}), UsageError);
  EXPECT_THROW(parse({"--queue", "heap"}), UsageError);
  EXPECT_THROW(parse({"--keys", "normal"}), UsageError);
  EXPECT_THROW(parse({"--mode", "latency"}), UsageError);
  EXPECT_THROW(parse({"--bogus"}), UsageError);
  EXPECT_THROW(parse({"--threads", "abc"}), UsageError);
}

TEST(RunCli, UsageExitCode) {
  std::string err;
  EXPECT_EQ(run({"--workload", "nope"}, nullptr, &err), kExitUsage);
  EXPECT_NE(err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"--duration-s", "0"}), kExitUsage);
  EXPECT_EQ(run({"--latency", "--duration-s", "1"}), kExitUsage);
}

TEST(RunCli, HelpExitsCleanly) {
  std::string out;
  EXPECT_EQ(run({"--help"}, &out), kExitOk);
  EXPECT_NE(out.find("--queue"), std::string::npos);
}

TEST(RunCli, UnwritableCsvFails) {
  EXPECT_EQ(run({"--queue", "globallock", "--duration-s", "0.05", "--reps", "1", "--prefill",
                 "10", "--csv", "/nonexistent-dir/out.csv", "--no-pin"}),
            kExitRuntimeError);
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(RunCli, CsvHasOneRowPerRepetitionPlusSummary) {
  const auto path = temp_file("pqbench_cli_reps.csv");
  std::string out;
  ASSERT_EQ(run({"--queue", "klsm", "--threads", "2", "--duration-s", "0.05", "--reps", "3",
                 "--prefill", "100", "--csv", path.string(), "--no-pin"},
                &out),
            kExitOk);
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], csv_header());
  double sum = 0;
  for (int i = 1; i <= 3; ++i) {
    const CsvRow row = parse_csv_row(lines[i]);
    EXPECT_EQ(row.repetition, std::to_string(i - 1));
    EXPECT_FALSE(row.rank_mean);  // throughput mode
    EXPECT_FALSE(row.bound);
    sum += row.mops_per_sec;
  }
  const CsvRow summary = parse_csv_row(lines[4]);
  EXPECT_EQ(summary.repetition, "summary");
  EXPECT_NEAR(summary.mops_per_sec, sum / 3, 1e-12 * std::max(1.0, sum));
  EXPECT_TRUE(summary.mops_ci95);
  EXPECT_NE(out.find("summary"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(RunCli, QualityCsvCarriesRanks) {
  const auto path = temp_file("pqbench_cli_quality.csv");
  ASSERT_EQ(run({"--queue", "globallock", "--threads", "2", "--duration-s", "0.05", "--reps",
                 "1", "--prefill", "100", "--mode", "quality", "--unique-keys", "--csv",
                 path.string(), "--no-pin"}),
            kExitOk);
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 3u);
  const CsvRow row = parse_csv_row(lines[1]);
  EXPECT_EQ(row.rank_max, 1u);
  EXPECT_EQ(row.bound, 1u);
  EXPECT_EQ(row.violations, 0u);
  std::filesystem::remove(path);
}

TEST(CsvRow, FormatParseRoundTrip) {
  CsvRow r;
  r.queue = "klsm";
  r.k = 128;
  r.threads = 8;
  r.workload = "uniform";
  r.keydist = "uniform32";
  r.prefill = 10000;
  r.duration = 2;
  r.repetition = "4";
  r.ops_total = 123456789;
  r.mops_per_sec = 0.1 + 0.2;
  r.rank_mean = 1.0 / 3;
  r.rank_std = 2.5;
  r.rank_max = 400;
  r.bound = 1025;
  r.violations = 0;
  const CsvRow back = parse_csv_row(format_csv_row(r));
  EXPECT_EQ(back.k, r.k);
  EXPECT_FALSE(back.c);
  EXPECT_EQ(back.ops_total, r.ops_total);
  EXPECT_EQ(back.mops_per_sec, r.mops_per_sec);
  EXPECT_EQ(back.rank_mean, r.rank_mean);
  EXPECT_EQ(back.bound, r.bound);
  EXPECT_FALSE(back.mops_ci95);
}

TEST(EmitReport, EmptyReportIsAnError) {
  rb::RunReport empty;
  std::ostringstream out;
  EXPECT_THROW(emit_report(empty, "", out), std::invalid_argument);
}

TEST(RunCli, ReplayDumpedLog) {
  const auto log = temp_file("pqbench_cli_replay.csv");
  ASSERT_EQ(run({"--queue", "klsm", "--k", "4", "--threads", "2", "--duration-s", "0.05",
                 "--reps", "1", "--prefill", "100", "--mode", "quality", "--dump-log",
                 log.string(), "--no-pin"}),
            kExitOk);
  std::string out;
  ASSERT_EQ(run({"--replay", log.string()}, &out), kExitOk);
  EXPECT_NE(out.find("rank_mean"), std::string::npos);
  std::filesystem::remove(log);
}

}  // namespace
}  // namespace pqbench
