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

#include "relaxpq/bench/rank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relaxpq::bench {

namespace {

// Fenwick tree of live-item counts per distinct key.
class CountTree {
 public:
  explicit CountTree(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t index, std::int64_t delta) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum over [0, index].
  std::int64_t prefix(std::size_t index) const {
    std::int64_t sum = 0;
    for (std::size_t i = index + 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<std::int64_t> tree_;
};

struct Inserted {
  std::uint64_t seq;
  Key key;
  std::uint32_t key_index;
  bool live;
};

}  // namespace

RankStats compute_ranks(std::span<const OpRecord> log, std::optional<std::uint64_t> bound) {
  std::vector<Inserted> inserted;
  std::vector<Key> keys;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (i > 0 && log[i].timestamp < log[i - 1].timestamp) {
      throw CorruptLogError("log not ordered by timestamp at record " + std::to_string(i));
    }
    if (log[i].kind == OpKind::kInsert) {
      inserted.push_back(Inserted{log[i].seq, log[i].key, 0, false});
      keys.push_back(log[i].key);
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::sort(inserted.begin(), inserted.end(),
            [](const Inserted& a, const Inserted& b) { return a.seq < b.seq; });
  for (std::size_t i = 0; i < inserted.size(); ++i) {
    if (i > 0 && inserted[i].seq == inserted[i - 1].seq) {
      throw CorruptLogError("item seq " + std::to_string(inserted[i].seq) + " inserted twice");
    }
    inserted[i].key_index = static_cast<std::uint32_t>(
        std::lower_bound(keys.begin(), keys.end(), inserted[i].key) - keys.begin());
  }

  auto find = [&inserted](std::uint64_t seq) -> Inserted* {
    auto it = std::lower_bound(inserted.begin(), inserted.end(), seq,
                               [](const Inserted& a, std::uint64_t s) { return a.seq < s; });
    return it != inserted.end() && it->seq == seq ? &*it : nullptr;
  };

  CountTree live(keys.size());
  RankStats stats;
  stats.bound = bound;
  for (const OpRecord& r : log) {
    Inserted* item = find(r.seq);
    if (r.kind == OpKind::kInsert) {
      item->live = true;
      live.add(item->key_index, 1);
      continue;
    }
    if (item == nullptr || !item->live || item->key != r.key) {
      throw CorruptLogError("delete of item (key " + std::to_string(r.key) + ", seq " +
                            std::to_string(r.seq) + ") that is not live");
    }
    stats.ranks.push_back(static_cast<std::uint64_t>(live.prefix(item->key_index)));
    live.add(item->key_index, -1);
    item->live = false;
  }
  summarize(stats);
  return stats;
}

void summarize(RankStats& stats) {
  const std::size_t n = stats.ranks.size();
  stats.deletions = n;
  stats.mean = 0.0;
  stats.stddev = 0.0;
  stats.max = 0;
  stats.violations = 0;
  if (n == 0) return;
  long double sum = 0;
  for (std::uint64_t r : stats.ranks) {
    sum += r;
    stats.max = std::max(stats.max, r);
    if (stats.bound && r > *stats.bound) ++stats.violations;
  }
  const long double mean = sum / n;
  long double sq = 0;
  for (std::uint64_t r : stats.ranks) sq += (r - mean) * (r - mean);
  stats.mean = static_cast<double>(mean);
  stats.stddev = n > 1 ? static_cast<double>(std::sqrt(sq / (n - 1))) : 0.0;
}

}  // namespace relaxpq::bench
