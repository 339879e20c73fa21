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

#ifndef RELAXPQ_BENCH_RANK_HPP_
#define RELAXPQ_BENCH_RANK_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "relaxpq/bench/oplog.hpp"

namespace relaxpq::bench {

struct RankStats {
  std::vector<std::uint64_t> ranks;  // one per successful deletion, in log order
  std::uint64_t deletions = 0;       // kept when `ranks` is released
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t max = 0;
  std::optional<std::uint64_t> bound;
  std::uint64_t violations = 0;  // ranks above `bound`
};

// Replays a time-ordered log against an order-statistic structure and
// returns the rank of every deleted item among the items live at that
// moment. Rank counts every live item whose key is <= the deleted key, so
// equal keys are counted pessimistically (an item tied with the deleted one
// always counts as smaller).
//
// Throws CorruptLogError if the log is not time-ordered, inserts an item
// twice, or deletes an item that is not live.
RankStats compute_ranks(std::span<const OpRecord> log,
                        std::optional<std::uint64_t> bound = std::nullopt);

// Fills mean/stddev/max/violations from `stats.ranks`.
void summarize(RankStats& stats);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_RANK_HPP_
