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

#include "relaxpq/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <thread>

#include "relaxpq/bench/affinity.hpp"
#include "relaxpq/bench/oplog.hpp"
#include "relaxpq/globallock.hpp"
#include "relaxpq/klsm.hpp"
#include "relaxpq/multiqueue.hpp"
#include "relaxpq/padded.hpp"
#include "relaxpq/rng.hpp"
#include "relaxpq/seq_queue.hpp"
#include "relaxpq/workload.hpp"

namespace relaxpq::bench {

namespace {

using Clock = std::chrono::steady_clock;

enum class LogMode { kOff, kItems, kTimed };

struct Shared {
  const BenchConfig* cfg = nullptr;
  std::uint64_t seed = 0;
  PinPlan pins;
  std::vector<OpLog> logs;
  std::vector<Padded<std::uint64_t>> counts;
  alignas(kCacheLine) std::atomic<std::uint64_t> clock{0};
  alignas(kCacheLine) std::atomic<bool> stop{false};
  std::atomic<bool> overflow{false};
  std::atomic<bool> pin_failed{false};
};

template <LogMode M>
class Recorder {
 public:
  Recorder(Shared& sh, std::uint32_t tid) : sh_(&sh), tid_(tid) {
    if constexpr (M != LogMode::kOff) log_ = &sh.logs[tid];
  }

  // Takes the timestamp for the next record ahead of time. Queues call
  // this right before the claim that commits a deletion.
  void prepare() {
    if constexpr (M == LogMode::kTimed) stamp_ = sh_->clock.fetch_add(1);
  }

  void operator()(OpKind kind, const Item& item) {
    if constexpr (M == LogMode::kOff) {
      (void)kind;
      (void)item;
    } else {
      OpRecord r{item.key, item.seq, 0, tid_, kind};
      if constexpr (M == LogMode::kTimed) {
        r.timestamp = stamp_ ? *stamp_ : sh_->clock.fetch_add(1);
        stamp_.reset();
      }
      if (!log_->push(r)) {
        sh_->overflow.store(true, std::memory_order_relaxed);
        sh_->stop.store(true, std::memory_order_release);
      }
    }
  }

 private:
  Shared* sh_;
  OpLog* log_ = nullptr;
  std::uint32_t tid_;
  std::optional<std::uint64_t> stamp_;
};

template <class R>
struct DeleteObserver {
  R* rec;
  void prepare() { rec->prepare(); }
  void operator()(const Item& it) { (*rec)(OpKind::kDelete, it); }
};

template <class Q, LogMode M>
void worker(Shared& sh, Q& q, std::uint32_t tid, std::barrier<>& start) {
  const BenchConfig& cfg = *sh.cfg;
  if (!sh.pins.cpus.empty() && !pin_current_thread(sh.pins.cpus[tid])) {
    sh.pin_failed.store(true, std::memory_order_relaxed);
  }
  auto h = q.handle(tid);
  KeyGenerator keys(cfg.keys, sh.seed, tid, cfg.threads);
  const OpGenerator ops(cfg.workload, sh.seed, tid, cfg.threads);
  Recorder<M> rec(sh, tid);
  auto on_insert = [&rec](const Item& it) { rec(OpKind::kInsert, it); };
  DeleteObserver<Recorder<M>> on_delete{&rec};

  std::uint64_t opnum = 0;
  const std::uint64_t share = prefill_share(cfg.prefill, cfg.workload.kind, tid, cfg.threads);
  for (; opnum < share; ++opnum) h.insert(keys.next_key(opnum), opnum, on_insert);

  start.arrive_and_wait();
  std::uint64_t count = 0;
  while (!sh.stop.load(std::memory_order_acquire)) {
    if (ops.next_op(opnum) == OpKind::kInsert) {
      h.insert(keys.next_key(opnum), opnum, on_insert);
    } else if (auto it = h.delete_min(on_delete)) {
      keys.on_deleted(it->key);
    }
    ++opnum;
    ++count;
  }
  sh.counts[tid].value = count;
}

bool same_items(std::vector<Item> inserted, std::vector<Item> deleted) {
  if (inserted.size() != deleted.size()) return false;
  auto by_seq = [](const Item& a, const Item& b) {
    return a.seq != b.seq ? a.seq < b.seq : a.key < b.key;
  };
  std::sort(inserted.begin(), inserted.end(), by_seq);
  std::sort(deleted.begin(), deleted.end(), by_seq);
  for (std::size_t i = 0; i < inserted.size(); ++i) {
    if (inserted[i].seq != deleted[i].seq || inserted[i].key != deleted[i].key) return false;
  }
  return true;
}

void dump_log(const BenchConfig& cfg, std::uint32_t rep, const std::vector<OpRecord>& log) {
  std::string path = cfg.dump_log_path;
  if (cfg.repetitions > 1) path += "." + std::to_string(rep);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open log dump file " + path);
  write_log_csv(out, log);
  if (!out) throw std::runtime_error("failed writing log dump file " + path);
}

template <class Q, LogMode M>
RepetitionResult run_repetition(const BenchConfig& cfg, Q& q, std::uint32_t rep,
                                const PinPlan& pins) {
  Shared sh;
  sh.cfg = &cfg;
  sh.seed = repetition_seed(cfg.seed, rep);
  sh.pins = pins;
  sh.counts.resize(cfg.threads);
  if constexpr (M != LogMode::kOff) {
    const std::size_t cap = log_capacity_per_thread(cfg);
    sh.logs.reserve(cfg.threads);
    for (std::uint32_t t = 0; t < cfg.threads; ++t) sh.logs.emplace_back(cap);
  }

  std::barrier<> start(static_cast<std::ptrdiff_t>(cfg.threads) + 1);
  std::vector<std::thread> threads;
  threads.reserve(cfg.threads);
  for (std::uint32_t t = 0; t < cfg.threads; ++t) {
    threads.emplace_back([&sh, &q, t, &start] { worker<Q, M>(sh, q, t, start); });
  }
  start.arrive_and_wait();
  const auto t0 = Clock::now();
  const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(cfg.duration_s));
  while (!sh.stop.load(std::memory_order_acquire)) {
    const auto now = Clock::now();
    if (now >= deadline) break;
    std::this_thread::sleep_until(std::min(deadline, now + std::chrono::milliseconds(10)));
  }
  sh.stop.store(true, std::memory_order_release);
  for (auto& th : threads) th.join();
  const auto t1 = Clock::now();

  if (sh.overflow.load()) {
    throw LogOverflowError("operation log overflow (" +
                           std::to_string(log_capacity_per_thread(cfg)) +
                           " records per thread); raise the log capacity or shorten the run");
  }

  RepetitionResult res;
  res.repetition = rep;
  res.seed = sh.seed;
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  for (const auto& c : sh.counts) {
    res.per_thread_ops.push_back(c.value);
    res.total_ops += c.value;
  }
  res.ops_per_sec = res.seconds > 0 ? static_cast<double>(res.total_ops) / res.seconds : 0.0;
  res.prefilled = cfg.prefill;

  // Single-threaded drain through thread 0's handle.
  std::vector<Item> drained;
  {
    auto h = q.handle(0);
    while (auto it = h.delete_min()) {
      if constexpr (M != LogMode::kOff) drained.push_back(*it);
      ++res.drained;
    }
  }

  if constexpr (M != LogMode::kOff) {
    std::vector<OpRecord> log = merge_logs(sh.logs);
    std::vector<Item> inserted;
    std::vector<Item> deleted = std::move(drained);
    for (const OpRecord& r : log) {
      (r.kind == OpKind::kInsert ? inserted : deleted).push_back(Item{r.key, 0, r.seq});
    }
    if (cfg.checks_enabled()) res.conserved = same_items(std::move(inserted), std::move(deleted));
    if constexpr (M == LogMode::kTimed) {
      if (!cfg.dump_log_path.empty()) dump_log(cfg, rep, log);
      res.ranks = compute_ranks(log, rank_bound(cfg));
    }
  }
  return res;
}

template <class Q, class Make>
void run_all(const BenchConfig& cfg, RunReport& report, const PinPlan& pins, Make make) {
  for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
    std::unique_ptr<Q> q = make(repetition_seed(cfg.seed, rep));
    RepetitionResult res;
    if (cfg.mode == Mode::kQuality) {
      res = run_repetition<Q, LogMode::kTimed>(cfg, *q, rep, pins);
    } else if (cfg.checks_enabled()) {
      res = run_repetition<Q, LogMode::kItems>(cfg, *q, rep, pins);
    } else {
      res = run_repetition<Q, LogMode::kOff>(cfg, *q, rep, pins);
    }
    if (res.ranks) res.ranks->ranks = {};
    report.throughput.repetitions.push_back(std::move(res));
  }
}

}  // namespace

std::uint64_t repetition_seed(std::uint64_t seed, std::uint32_t repetition) {
  return derive_seed(seed, repetition, StreamPurpose::kRepetition);
}

std::uint64_t RunReport::violations() const {
  std::uint64_t v = 0;
  for (const auto& r : throughput.repetitions) {
    if (r.ranks) v += r.ranks->violations;
  }
  return v;
}

bool RunReport::conserved() const {
  return std::all_of(throughput.repetitions.begin(), throughput.repetitions.end(),
                     [](const RepetitionResult& r) { return r.conserved.value_or(true); });
}

RunReport run(const BenchConfig& cfg) {
  validate(cfg);
  RunReport report;
  report.config = cfg;
  report.bound = cfg.mode == Mode::kQuality ? rank_bound(cfg) : std::nullopt;
  report.throughput_perturbed = cfg.mode == Mode::kQuality;
  const PinPlan pins = plan_pinning(cfg.threads, cfg.pin_threads);
  if (pins.warning) report.warnings.push_back(*pins.warning);

  switch (cfg.queue) {
    case QueueKind::kKlsm:
      run_all<Klsm>(cfg, report, pins, [&](std::uint64_t seed) {
        return std::make_unique<Klsm>(cfg.k, cfg.threads, seed);
      });
      break;
    case QueueKind::kMultiQueue:
      run_all<MultiQueue>(cfg, report, pins, [&](std::uint64_t seed) {
        return std::make_unique<MultiQueue>(cfg.c, cfg.threads, seed);
      });
      break;
    case QueueKind::kGlobalLock:
      run_all<GlobalLockQueue>(cfg, report, pins, [&](std::uint64_t) {
        return std::make_unique<GlobalLockQueue>(cfg.threads);
      });
      break;
    case QueueKind::kSeqLsm:
      run_all<SeqLsmQueue>(cfg, report, pins,
                           [](std::uint64_t) { return std::make_unique<SeqLsmQueue>(); });
      break;
  }

  std::vector<double> rates;
  std::vector<double> rank_means;
  for (const auto& r : report.throughput.repetitions) {
    rates.push_back(r.ops_per_sec);
    if (r.ranks) rank_means.push_back(r.ranks->mean);
  }
  report.throughput.ops_per_sec = aggregate(rates);
  if (!rank_means.empty()) report.rank_mean = aggregate(rank_means);
  return report;
}

RunReport run_throughput(const BenchConfig& cfg) {
  if (cfg.mode != Mode::kThroughput) throw ConfigError("run_throughput needs throughput mode");
  return run(cfg);
}

RunReport run_quality(const BenchConfig& cfg) {
  if (cfg.mode != Mode::kQuality) throw ConfigError("run_quality needs quality mode");
  return run(cfg);
}

}  // namespace relaxpq::bench
