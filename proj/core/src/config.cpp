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

#include "relaxpq/bench/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace relaxpq::bench {

namespace {

constexpr std::array<std::pair<std::string_view, QueueKind>, 4> kQueueNames{{
    {"klsm", QueueKind::kKlsm},
    {"multiq", QueueKind::kMultiQueue},
    {"globallock", QueueKind::kGlobalLock},
    {"seqlsm", QueueKind::kSeqLsm},
}};

// Total records across all threads a run may buffer (32 bytes each).
constexpr std::size_t kLogBudget = std::size_t{40} << 20;
// Per-thread operation rate used to size log buffers.
constexpr double kEstimatedOpsPerSecond = 10e6;

}  // namespace

std::string_view to_string(QueueKind kind) {
  for (const auto& [name, v] : kQueueNames) {
    if (v == kind) return name;
  }
  return "?";
}

std::string_view to_string(Mode mode) {
  return mode == Mode::kQuality ? "quality" : "throughput";
}

std::optional<QueueKind> parse_queue(std::string_view name) {
  for (const auto& [n, v] : kQueueNames) {
    if (n == name) return v;
  }
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "throughput") return Mode::kThroughput;
  if (name == "quality") return Mode::kQuality;
  return std::nullopt;
}

void validate(const BenchConfig& cfg) {
  if (cfg.latency) throw ConfigError("latency mode is not implemented; use throughput mode");
  if (cfg.threads == 0) throw ConfigError("threads must be at least 1");
  if (cfg.threads > (1u << 16) - 1) throw ConfigError("threads must fit in 16 bits");
  if (cfg.repetitions == 0) throw ConfigError("repetitions must be at least 1");
  if (!(cfg.duration_s > 0.0) || !std::isfinite(cfg.duration_s)) {
    throw ConfigError("duration must be positive");
  }
  if (cfg.queue == QueueKind::kMultiQueue && cfg.c == 0) {
    throw ConfigError("multiqueue needs c >= 1");
  }
  if (cfg.queue == QueueKind::kSeqLsm && cfg.threads != 1) {
    throw ConfigError("seqlsm is sequential and requires exactly one thread");
  }
  const double p = cfg.workload.insert_probability;
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("insert probability must lie in [0, 1]");
}

std::optional<std::uint64_t> rank_bound(const BenchConfig& cfg) {
  switch (cfg.queue) {
    case QueueKind::kKlsm: return cfg.k * cfg.threads + 1;
    case QueueKind::kGlobalLock:
    case QueueKind::kSeqLsm: return 1;
    case QueueKind::kMultiQueue: return std::nullopt;
  }
  return std::nullopt;
}

std::size_t log_capacity_per_thread(const BenchConfig& cfg) {
  if (cfg.log_capacity != 0) return cfg.log_capacity;
  const std::size_t threads = std::max<std::uint32_t>(cfg.threads, 1);
  const auto by_rate = static_cast<std::size_t>(cfg.duration_s * kEstimatedOpsPerSecond);
  const std::size_t prefill =
      cfg.prefill / inserter_count(cfg.workload.kind, static_cast<std::uint32_t>(threads)) + 1;
  return std::min(kLogBudget / threads, by_rate) + prefill;
}

}  // namespace relaxpq::bench
