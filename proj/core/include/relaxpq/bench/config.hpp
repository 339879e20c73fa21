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

#ifndef RELAXPQ_BENCH_CONFIG_HPP_
#define RELAXPQ_BENCH_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relaxpq/workload.hpp"

namespace relaxpq::bench {

enum class QueueKind { kKlsm, kMultiQueue, kGlobalLock, kSeqLsm };

enum class Mode { kThroughput, kQuality };

std::string_view to_string(QueueKind kind);
std::string_view to_string(Mode mode);
std::optional<QueueKind> parse_queue(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BenchConfig {
  QueueKind queue = QueueKind::kKlsm;
  std::uint64_t k = 256;
  std::uint32_t c = 4;
  std::uint32_t threads = 1;
  Workload workload;
  KeyDist keys;
  std::uint64_t prefill = 1'000'000;
  double duration_s = 10.0;
  std::uint32_t repetitions = 30;
  std::uint64_t seed = 0;
  Mode mode = Mode::kThroughput;

  // Requests latency measurement; not implemented, rejected by validate().
  bool latency = false;

  // Conservation (and, in quality mode, rank bound) checks. Unset means on
  // in quality mode and off in throughput mode.
  std::optional<bool> self_checks;

  // Log records per thread; 0 derives a size from duration and thread count.
  std::size_t log_capacity = 0;

  bool pin_threads = true;

  // When set, each repetition's merged operation log is written here as CSV
  // (with ".<rep>" appended when there is more than one repetition).
  std::string dump_log_path;

  bool checks_enabled() const { return self_checks.value_or(mode == Mode::kQuality); }
};

// Throws ConfigError describing the first invalid setting.
void validate(const BenchConfig& cfg);

// Theoretical maximum rank of a deleted item: kP + 1 for the k-LSM, 1 for the
// strict queues, none for the MultiQueue.
std::optional<std::uint64_t> rank_bound(const BenchConfig& cfg);

// Log records reserved per thread for a run of `cfg`.
std::size_t log_capacity_per_thread(const BenchConfig& cfg);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_CONFIG_HPP_
