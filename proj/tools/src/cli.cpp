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

#include <exception>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pqbench/cli.hpp"
#include "relaxpq/bench/oplog.hpp"
#include "relaxpq/bench/rank.hpp"

namespace pqbench {

namespace rb = relaxpq::bench;

namespace {

template <class T, class Parse>
T parse_enum(const std::string& flag, const std::string& value, Parse parse,
             const std::string& choices, const std::string& usage) {
  if (auto v = parse(value)) return *v;
  throw UsageError(flag + ": invalid value '" + value + "' (expected " + choices + ")", usage);
}

}  // namespace

CliOptions parse_config(int argc, const char* const* argv) {
  CliOptions opts;
  rb::BenchConfig& cfg = opts.config;

  CLI::App app{"Concurrent priority queue throughput and rank-error benchmark", "pqbench"};
  std::string queue = "klsm";
  std::string workload = "uniform";
  std::string keys = "uniform32";
  std::string mode = "throughput";
  std::string dependency = "none";
  std::uint32_t reps = cfg.repetitions;

  app.add_option("--queue", queue, "klsm|multiq|globallock|seqlsm")->capture_default_str();
  auto* k_opt = app.add_option("--k", cfg.k, "k-LSM relaxation parameter")->capture_default_str();
  app.add_option("--c", cfg.c, "MultiQueue sub-queues per thread")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads P")->capture_default_str();
  app.add_option("--workload", workload, "uniform|split|alternating")->capture_default_str();
  app.add_option("--keys", keys, "uniform32|uniform16|uniform8|ascending|descending")
      ->capture_default_str();
  app.add_option("--prefill", cfg.prefill, "items inserted before timing")->capture_default_str();
  app.add_option("--duration-s", cfg.duration_s, "seconds per repetition")
      ->capture_default_str();
  app.add_option("--reps", reps, "repetitions")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  app.add_option("--mode", mode, "throughput|quality")->capture_default_str();
  app.add_option("--csv", opts.csv_path, "write per-repetition CSV here");
  app.add_flag("--unique-keys", cfg.keys.unique, "make every key distinct");
  app.add_option("--insert-prob", cfg.workload.insert_probability,
                 "insert probability of the uniform workload")
      ->capture_default_str();
  app.add_option("--key-dependency", dependency,
                 "none|ascending|descending (experimental: keys follow the last deleted key)")
      ->capture_default_str();
  app.add_option("--log-capacity", cfg.log_capacity, "log records per thread (0 = derive)")
      ->capture_default_str();
  app.add_option("--dump-log", cfg.dump_log_path, "write the merged quality log as CSV");
  app.add_option("--replay", opts.replay_path, "compute ranks of an operation log CSV and exit");
  app.add_flag("--latency", cfg.latency, "latency mode (not implemented)");
  auto* checks_on = app.add_flag("--self-checks", "force conservation and bound checks on");
  auto* checks_off = app.add_flag("--no-self-checks", "turn self-checks off");
  checks_on->excludes(checks_off);
  bool no_pin = false;
  app.add_flag("--no-pin", no_pin, "do not pin worker threads");

  opts.usage = app.help();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    opts.help = true;
    return opts;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), opts.usage);
  }

  cfg.repetitions = reps;
  cfg.queue = parse_enum<rb::QueueKind>("--queue", queue, rb::parse_queue,
                                        "klsm|multiq|globallock|seqlsm", opts.usage);
  cfg.workload.kind = parse_enum<relaxpq::WorkloadKind>(
      "--workload", workload, relaxpq::parse_workload, "uniform|split|alternating", opts.usage);
  cfg.keys.kind = parse_enum<relaxpq::KeyDistKind>(
      "--keys", keys, relaxpq::parse_key_dist,
      "uniform32|uniform16|uniform8|ascending|descending", opts.usage);
  cfg.keys.dependency = parse_enum<relaxpq::KeyDependency>(
      "--key-dependency", dependency, relaxpq::parse_key_dependency, "none|ascending|descending",
      opts.usage);
  cfg.mode = parse_enum<rb::Mode>("--mode", mode, rb::parse_mode, "throughput|quality",
                                  opts.usage);
  if (checks_on->count() > 0) cfg.self_checks = true;
  if (checks_off->count() > 0) cfg.self_checks = false;
  cfg.pin_threads = !no_pin;

  if (k_opt->count() > 0 && cfg.queue != rb::QueueKind::kKlsm) {
    opts.warnings.push_back("--k only applies to --queue klsm; ignored");
  }
  if (cfg.keys.dependency != relaxpq::KeyDependency::kNone) {
    opts.warnings.push_back("--key-dependency is experimental");
  }
  return opts;
}

namespace {

int replay(const CliOptions& opts, std::ostream& out) {
  std::ifstream in(opts.replay_path);
  if (!in) throw std::runtime_error("cannot open " + opts.replay_path);
  std::vector<rb::OpRecord> log = rb::read_log_csv(in);
  rb::linearize(log);
  const rb::RankStats stats = rb::compute_ranks(log);
  out << "events " << log.size() << "\n"
      << "deletions " << stats.ranks.size() << "\n"
      << "rank_mean " << stats.mean << "\n"
      << "rank_std " << stats.stddev << "\n"
      << "rank_max " << stats.max << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions opts;
  try {
    opts = parse_config(argc, argv);
  } catch (const UsageError& e) {
    err << "pqbench: " << e.what() << "\n\n" << e.usage();
    return kExitUsage;
  }
  if (opts.help) {
    out << opts.usage;
    return kExitOk;
  }
  for (const auto& w : opts.warnings) err << "pqbench: warning: " << w << "\n";

  try {
    if (!opts.replay_path.empty()) return replay(opts, out);
    try {
      rb::validate(opts.config);
    } catch (const rb::ConfigError& e) {
      err << "pqbench: " << e.what() << "\n\n" << opts.usage;
      return kExitUsage;
    }
    const rb::RunReport report = rb::run(opts.config);
    for (const auto& w : report.warnings) err << "pqbench: warning: " << w << "\n";
    if (report.throughput_perturbed) {
      err << "pqbench: note: quality runs log every operation; throughput is perturbed\n";
    }
    emit_report(report, opts.csv_path, out);

    if (opts.config.checks_enabled()) {
      if (report.violations() > 0) {
        err << "pqbench: rank bound violated " << report.violations() << " times\n";
        return kExitBoundViolation;
      }
      if (!report.conserved()) {
        err << "pqbench: conservation check failed: inserted and deleted items differ\n";
        return kExitConservation;
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "pqbench: error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace pqbench
