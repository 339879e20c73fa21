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

#include "relaxpq/klsm.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <thread>

#include "gtest/gtest.h"
#include "relaxpq/rng.hpp"

namespace relaxpq {
namespace {

TEST(Klsm, OverflowSpillsLargestBlock) {
  Klsm q(4, 1);
  auto h = q.handle(0);
  for (Key k = 1; k <= 5; ++k) h.insert(k, 0);
  EXPECT_EQ(q.slsm().state().lsm.size(), 4u);
  EXPECT_EQ(h.local().size(), 1u);
}

TEST(Klsm, ZeroKSendsEverythingShared) {
  Klsm q(0, 1);
  auto h = q.handle(0);
  for (Key k = 1; k <= 7; ++k) {
    h.insert(k, 0);
    EXPECT_EQ(h.local().size(), 0u);
  }
  EXPECT_EQ(q.slsm().state().lsm.size(), 7u);
}

TEST(Klsm, LargeKKeepsSharedEmpty) {
  Klsm q(1000, 1);
  auto h = q.handle(0);
  for (Key k = 0; k < 500; ++k) h.insert(k, 0);
  EXPECT_TRUE(q.slsm().state().lsm.empty());
  EXPECT_EQ(h.local().size(), 500u);
}

TEST(Klsm, DeleteTakesSmallerSide) {
  Klsm q(1, 1);
  auto h = q.handle(0);
  h.insert(3, 0);
  h.insert(9, 0);  // both spill
  h.insert(7, 0);  // stays local
  ASSERT_EQ(h.local().size(), 1u);
  EXPECT_EQ(h.delete_min()->key, 3u);
}

TEST(Klsm, RankBound) {
  EXPECT_EQ(Klsm(128, 20).rank_bound(), 2561u);
  EXPECT_EQ(Klsm(0, 1).rank_bound(), 1u);
}

TEST(Klsm, StrictWithOneThreadAndZeroK) {
  Klsm q(0, 1, 42);
  auto h = q.handle(0);
  std::priority_queue<Item, std::vector<Item>, ItemGreater> oracle;
  SplitMix64 rng(8);
  std::uint64_t n = 0;
  for (int op = 0; op < 100000; ++op) {
    if (rng.below(2) == 0) {
      const Key k = rng.below(1000);
      h.insert(k, 0, [&](const Item& it) { oracle.push(it); });
      ++n;
    } else {
      auto got = h.delete_min();
      if (oracle.empty()) {
        ASSERT_FALSE(got);
      } else {
        ASSERT_TRUE(got);
        ASSERT_EQ(*got, oracle.top());
        oracle.pop();
      }
    }
  }
  EXPECT_GT(n, 0u);
}

TEST(Klsm, SingleThreadRankWithinBound) {
  constexpr std::size_t kK = 16;
  Klsm q(kK, 1, 3);
  auto h = q.handle(0);
  std::set<std::pair<Key, std::uint64_t>> live;
  SplitMix64 rng(4);
  for (int op = 0; op < 50000; ++op) {
    if (rng.below(2) == 0) {
      h.insert(rng.below(1 << 20), 0, [&](const Item& it) { live.insert({it.key, it.seq}); });
    } else if (auto it = h.delete_min()) {
      auto pos = live.find({it->key, it->seq});
      ASSERT_NE(pos, live.end());
      EXPECT_LE(static_cast<std::size_t>(std::distance(live.begin(), pos)) + 1, q.rank_bound());
      live.erase(pos);
    }
  }
}

TEST(Klsm, ConcurrentConservation) {
  constexpr int kThreads = 4;
  Klsm q(8, kThreads, 11);
  std::vector<std::vector<Item>> ins(kThreads);
  std::vector<std::vector<Item>> del(kThreads);
  std::vector<std::thread> ts;
  for (int t = 0; t < kThreads; ++t) {
    ts.emplace_back([&, t] {
      auto h = q.handle(t);
      SplitMix64 rng(100 + t);
      for (int i = 0; i < 30000; ++i) {
        if (rng.below(2) == 0) {
          h.insert(rng.below(1 << 16), 0, [&](const Item& it) { ins[t].push_back(it); });
        } else if (auto it = h.delete_min()) {
          del[t].push_back(*it);
        }
      }
    });
  }
  for (auto& th : ts) th.join();
  auto h = q.handle(0);
  std::vector<Item> a;
  std::vector<Item> b;
  while (auto it = h.delete_min()) b.push_back(*it);
  for (int t = 0; t < kThreads; ++t) {
    a.insert(a.end(), ins[t].begin(), ins[t].end());
    b.insert(b.end(), del[t].begin(), del[t].end());
  }
  std::sort(a.begin(), a.end(), ItemLess{});
  std::sort(b.begin(), b.end(), ItemLess{});
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace relaxpq
