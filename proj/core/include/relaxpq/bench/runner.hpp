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

#ifndef RELAXPQ_BENCH_RUNNER_HPP_
#define RELAXPQ_BENCH_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaxpq/bench/config.hpp"
#include "relaxpq/bench/rank.hpp"
#include "relaxpq/bench/stats.hpp"

namespace relaxpq::bench {

struct RepetitionResult {
  std::uint32_t repetition = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::uint64_t total_ops = 0;  // always the sum of per_thread_ops
  std::vector<std::uint64_t> per_thread_ops;
  double ops_per_sec = 0.0;
  std::uint64_t prefilled = 0;
  std::uint64_t drained = 0;  // items left in the queue after the timed phase
  std::optional<RankStats> ranks;  // quality mode
  std::optional<bool> conserved;   // when self-checks are on
};

struct ThroughputResult {
  std::vector<RepetitionResult> repetitions;
  Summary ops_per_sec;
};

struct RunReport {
  BenchConfig config;
  ThroughputResult throughput;
  std::optional<Summary> rank_mean;  // over repetitions, quality mode
  std::optional<std::uint64_t> bound;
  std::vector<std::string> warnings;
  // Quality runs log every operation, so their throughput is not comparable
  // to throughput-mode numbers.
  bool throughput_perturbed = false;

  std::uint64_t violations() const;
  bool conserved() const;
};

// Validates `cfg` (ConfigError) and runs every repetition. Throws
// LogOverflowError if a log buffer fills up.
RunReport run(const BenchConfig& cfg);

// As run(), but requires the matching mode.
RunReport run_throughput(const BenchConfig& cfg);
RunReport run_quality(const BenchConfig& cfg);

// Per-repetition seed derived from the run seed.
std::uint64_t repetition_seed(std::uint64_t seed, std::uint32_t repetition);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_RUNNER_HPP_
