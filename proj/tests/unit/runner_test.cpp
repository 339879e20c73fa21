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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "gtest/gtest.h"
#include "relaxpq/bench/affinity.hpp"
#include "relaxpq/bench/config.hpp"
#include "relaxpq/bench/oplog.hpp"
#include "relaxpq/bench/runner.hpp"

namespace relaxpq::bench {
namespace {

BenchConfig quick(QueueKind queue, std::uint32_t threads) {
  BenchConfig cfg;
  cfg.queue = queue;
  cfg.threads = threads;
  cfg.prefill = 1000;
  cfg.duration_s = 0.1;
  cfg.repetitions = 2;
  cfg.seed = 1;
  cfg.pin_threads = false;
  return cfg;
}

TEST(Config, Validation) {
  BenchConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.duration_s = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.repetitions = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.threads = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.latency = true;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.queue = QueueKind::kSeqLsm;
  cfg.threads = 2;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.queue = QueueKind::kMultiQueue;
  cfg.c = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = BenchConfig{};
  cfg.workload.insert_probability = 1.5;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(Config, RankBound) {
  BenchConfig cfg;
  cfg.k = 128;
  cfg.threads = 4;
  EXPECT_EQ(rank_bound(cfg), 513u);
  cfg.queue = QueueKind::kGlobalLock;
  EXPECT_EQ(rank_bound(cfg), 1u);
  cfg.queue = QueueKind::kMultiQueue;
  EXPECT_FALSE(rank_bound(cfg));
}

TEST(Config, ChecksDefaultByMode) {
  BenchConfig cfg;
  EXPECT_FALSE(cfg.checks_enabled());
  cfg.mode = Mode::kQuality;
  EXPECT_TRUE(cfg.checks_enabled());
  cfg.self_checks = false;
  EXPECT_FALSE(cfg.checks_enabled());
}

TEST(Affinity, PlanFallsBackWhenCoresAreShort) {
  const char* saved = std::getenv("PQBENCH_NO_PIN");
  const std::string saved_value = saved ? saved : "";
  unsetenv("PQBENCH_NO_PIN");
  const auto cpus = allowed_cpus();
  ASSERT_FALSE(cpus.empty());
  const PinPlan none = plan_pinning(cpus.size() + 1, true);
  EXPECT_TRUE(none.cpus.empty());
  EXPECT_TRUE(none.warning);
  EXPECT_TRUE(plan_pinning(1, false).cpus.empty());
  EXPECT_EQ(plan_pinning(1, true).cpus.size(), 1u);
  setenv("PQBENCH_NO_PIN", "1", 1);
  EXPECT_TRUE(pinning_disabled_by_env());
  EXPECT_TRUE(plan_pinning(1, true).cpus.empty());
  if (saved) {
    setenv("PQBENCH_NO_PIN", saved_value.c_str(), 1);
  } else {
    unsetenv("PQBENCH_NO_PIN");
  }
}

TEST(Runner, TotalsAddUp) {
  const RunReport r = run(quick(QueueKind::kKlsm, 2));
  ASSERT_EQ(r.throughput.repetitions.size(), 2u);
  for (const auto& rep : r.throughput.repetitions) {
    EXPECT_EQ(rep.total_ops,
              std::accumulate(rep.per_thread_ops.begin(), rep.per_thread_ops.end(), 0ULL));
    EXPECT_GT(rep.total_ops, 0u);
    EXPECT_GT(rep.seconds, 0.09);
  }
  EXPECT_EQ(r.throughput.ops_per_sec.count, 2u);
  EXPECT_FALSE(r.throughput_perturbed);
}

TEST(Runner, RepetitionsUseDistinctSeeds) {
  const RunReport r = run(quick(QueueKind::kGlobalLock, 1));
  EXPECT_NE(r.throughput.repetitions[0].seed, r.throughput.repetitions[1].seed);
  EXPECT_EQ(r.throughput.repetitions[0].seed, repetition_seed(1, 0));
}

TEST(Runner, ZeroDurationRejected) {
  BenchConfig cfg = quick(QueueKind::kKlsm, 1);
  cfg.duration_s = 0;
  EXPECT_THROW(run(cfg), ConfigError);
}

TEST(Runner, QualityRunOnStrictQueueHasRankOne) {
  BenchConfig cfg = quick(QueueKind::kGlobalLock, 3);
  cfg.mode = Mode::kQuality;
  cfg.keys.unique = true;
  const RunReport r = run_quality(cfg);
  EXPECT_TRUE(r.throughput_perturbed);
  for (const auto& rep : r.throughput.repetitions) {
    ASSERT_TRUE(rep.ranks);
    EXPECT_EQ(rep.ranks->max, 1u);
    EXPECT_EQ(rep.ranks->violations, 0u);
    EXPECT_EQ(rep.conserved, true);
  }
}

TEST(Runner, SmallKConcurrentRunStaysWithinBound) {
  // Small k makes spills frequent, which is where stale decisions show up.
  BenchConfig cfg = quick(QueueKind::kKlsm, 2);
  cfg.k = 4;
  cfg.mode = Mode::kQuality;
  cfg.keys.unique = true;
  cfg.duration_s = 0.2;
  cfg.repetitions = 5;
  const RunReport r = run(cfg);
  for (const auto& rep : r.throughput.repetitions) {
    EXPECT_LE(rep.ranks->max, 9u);
    EXPECT_EQ(rep.conserved, true);
  }
  EXPECT_EQ(r.violations(), 0u);
}

TEST(Runner, ConservationForEveryQueue) {
  for (auto q : {QueueKind::kKlsm, QueueKind::kMultiQueue, QueueKind::kGlobalLock}) {
    BenchConfig cfg = quick(q, 3);
    cfg.self_checks = true;
    const RunReport r = run(cfg);
    EXPECT_TRUE(r.conserved()) << to_string(q);
  }
  BenchConfig seq = quick(QueueKind::kSeqLsm, 1);
  seq.self_checks = true;
  EXPECT_TRUE(run(seq).conserved());
}

TEST(Runner, SplitWorkloadRuns) {
  BenchConfig cfg = quick(QueueKind::kKlsm, 3);
  cfg.workload.kind = WorkloadKind::kSplit;
  cfg.self_checks = true;
  EXPECT_TRUE(run(cfg).conserved());
}

TEST(Runner, LogOverflowIsReported) {
  BenchConfig cfg = quick(QueueKind::kGlobalLock, 1);
  cfg.mode = Mode::kQuality;
  cfg.log_capacity = 10;
  EXPECT_THROW(run(cfg), LogOverflowError);
}

TEST(Runner, DumpedLogReplaysToSameRanks) {
  const auto path = std::filesystem::temp_directory_path() / "relaxpq_runner_dump.csv";
  BenchConfig cfg = quick(QueueKind::kKlsm, 2);
  cfg.mode = Mode::kQuality;
  cfg.repetitions = 1;
  cfg.dump_log_path = path.string();
  const RunReport r = run(cfg);
  std::ifstream in(path);
  auto log = read_log_csv(in);
  const RankStats again = compute_ranks(log, rank_bound(cfg));
  EXPECT_DOUBLE_EQ(again.mean, r.throughput.repetitions[0].ranks->mean);
  EXPECT_EQ(again.max, r.throughput.repetitions[0].ranks->max);
  std::filesystem::remove(path);
}

TEST(Runner, PrefillContinuesOpnum) {
  // The first timed key of an ascending run must continue past the prefill.
  BenchConfig cfg = quick(QueueKind::kSeqLsm, 1);
  cfg.keys.kind = KeyDistKind::kAscending;
  cfg.workload.kind = WorkloadKind::kAlternating;
  cfg.mode = Mode::kQuality;
  cfg.prefill = 5000;
  cfg.repetitions = 1;
  const auto path = std::filesystem::temp_directory_path() / "relaxpq_prefill_dump.csv";
  cfg.dump_log_path = path.string();
  run(cfg);
  std::ifstream in(path);
  const auto log = read_log_csv(in);
  ASSERT_GT(log.size(), 5001u);
  // Records 0..4999 are prefill inserts; record 5000 is the first timed op.
  EXPECT_EQ(log[5000].kind, OpKind::kInsert);
  EXPECT_GE(log[5000].key, 5000u);
  EXPECT_LE(log[5000].key, 5000u + 1023);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace relaxpq::bench
