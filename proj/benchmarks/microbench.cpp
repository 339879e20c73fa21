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

#include <vector>

#include "benchmark/benchmark.h"
#include "relaxpq/bench/rank.hpp"
#include "relaxpq/globallock.hpp"
#include "relaxpq/klsm.hpp"
#include "relaxpq/lsm.hpp"
#include "relaxpq/multiqueue.hpp"
#include "relaxpq/rng.hpp"
#include "relaxpq/seq_queue.hpp"

namespace relaxpq {
namespace {

void BM_SeqLsmInsert(benchmark::State& state) {
  SplitMix64 rng(1);
  std::uint64_t seq = 0;
  for (auto _ : state) {
    state.PauseTiming();
    SeqLsm lsm;
    state.ResumeTiming();
    for (std::int64_t i = 0; i < state.range(0); ++i) lsm.insert(Item{rng.below(1u << 31), 0, seq++});
    benchmark::DoNotOptimize(lsm.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SeqLsmInsert)->Arg(1 << 10)->Arg(1 << 16);

// Hold model: one delete and one insert per iteration at steady size.
template <class Q, class... Args>
void hold(benchmark::State& state, Args... args) {
  Q q(args...);
  auto h = q.handle(0);
  SplitMix64 rng(2);
  for (std::int64_t i = 0; i < state.range(0); ++i) h.insert(rng.below(1u << 31), 0);
  for (auto _ : state) {
    auto it = h.delete_min();
    benchmark::DoNotOptimize(it);
    h.insert(rng.below(1u << 31), 0);
  }
  state.SetItemsProcessed(state.iterations() * 2);
}

void BM_HoldSeqLsm(benchmark::State& state) { hold<SeqLsmQueue>(state); }
void BM_HoldKlsm(benchmark::State& state) { hold<Klsm>(state, std::size_t{256}, std::size_t{1}, std::uint64_t{1}); }
void BM_HoldMultiQueue(benchmark::State& state) { hold<MultiQueue>(state, std::size_t{4}, std::size_t{1}, std::uint64_t{1}); }
void BM_HoldGlobalLock(benchmark::State& state) { hold<GlobalLockQueue>(state, std::size_t{1}); }

BENCHMARK(BM_HoldSeqLsm)->Arg(1 << 16);
BENCHMARK(BM_HoldKlsm)->Arg(1 << 16);
BENCHMARK(BM_HoldMultiQueue)->Arg(1 << 16);
BENCHMARK(BM_HoldGlobalLock)->Arg(1 << 16);

void BM_ComputeRanks(benchmark::State& state) {
  SplitMix64 rng(3);
  std::vector<bench::OpRecord> log;
  std::vector<bench::OpRecord> live;
  std::uint64_t seq = 0;
  for (std::int64_t ts = 0; ts < state.range(0); ++ts) {
    if (live.empty() || rng.below(2) == 0) {
      bench::OpRecord r{rng.below(1u << 31), seq++, static_cast<std::uint64_t>(ts), 0,
                        OpKind::kInsert};
      live.push_back(r);
      log.push_back(r);
    } else {
      const std::size_t i = rng.below(live.size());
      log.push_back(bench::OpRecord{live[i].key, live[i].seq, static_cast<std::uint64_t>(ts), 0,
                                    OpKind::kDelete});
      live[i] = live.back();
      live.pop_back();
    }
  }
  for (auto _ : state) {
    auto stats = bench::compute_ranks(log);
    benchmark::DoNotOptimize(stats.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeRanks)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace
}  // namespace relaxpq

BENCHMARK_MAIN();
