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

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

#include "gtest/gtest.h"
#include "relaxpq/block.hpp"
#include "relaxpq/lsm.hpp"
#include "relaxpq/rng.hpp"

namespace relaxpq {
namespace {

std::vector<Item> items(std::initializer_list<Key> keys) {
  std::vector<Item> out;
  std::uint64_t seq = 0;
  for (Key k : keys) out.push_back(Item{k, k, seq++});
  std::sort(out.begin(), out.end(), ItemLess{});
  return out;
}

std::vector<Key> keys_of(std::span<const Item> xs) {
  std::vector<Key> out;
  for (const Item& x : xs) out.push_back(x.key);
  return out;
}

std::vector<std::size_t> capacities(const SeqLsm& lsm) {
  std::vector<std::size_t> out;
  for (const auto& s : lsm.slots()) out.push_back(s.capacity());
  return out;
}

TEST(Block, CapacityIsNextPowerOfTwo) {
  EXPECT_EQ(Block<Item>::make(items({1}))->capacity(), 1u);
  EXPECT_EQ(Block<Item>::make(items({1, 2, 3}))->capacity(), 4u);
  EXPECT_EQ(Block<Item>::make(items({1, 2, 3, 4}))->capacity(), 4u);
  EXPECT_EQ(Block<Item>::make(items({1, 2, 3, 4, 5}))->capacity(), 8u);
}

TEST(Block, MergeOfEqualCapacitiesDoubles) {
  auto a = Block<Item>::make(items({3, 9}));
  std::vector<Item> bi = {Item{1, 0, 10}, Item{4, 0, 11}};
  auto b = Block<Item>::make(bi);
  auto m = block_merge(*a, *b);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->capacity(), 4u);
  EXPECT_EQ(keys_of(m->items()), (std::vector<Key>{1, 3, 4, 9}));
}

TEST(Block, MergeOfThreeAndFourHasCapacityEight) {
  auto a = Block<Item>::make(items({2, 6, 8}));
  std::vector<Item> bi = {Item{1, 0, 10}, Item{3, 0, 11}, Item{5, 0, 12}, Item{7, 0, 13}};
  auto b = Block<Item>::make(bi);
  auto m = block_merge(*a, *b);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->capacity(), 8u);
  EXPECT_EQ(m->items().size(), 7u);
  EXPECT_EQ(keys_of(m->items()), (std::vector<Key>{1, 2, 3, 5, 6, 7, 8}));
}

TEST(Block, MergeKeepsDuplicateKeysInSeqOrder) {
  std::vector<Item> a = {Item{5, 0, 2}};
  std::vector<Item> b = {Item{5, 0, 1}};
  auto m = merge_live<Item>(a, b);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].seq, 1u);
  EXPECT_EQ(m[1].seq, 2u);
}

TEST(Block, MergeCollapsesSameItem) {
  std::vector<Item> a = {Item{5, 0, 1}, Item{6, 0, 2}};
  std::vector<Item> b = {Item{5, 0, 1}};
  EXPECT_EQ(merge_live<Item>(a, b).size(), 2u);
}

TEST(Lsm, BinaryCounterCapacities) {
  SeqLsm lsm;
  for (std::uint64_t i = 1; i <= 64; ++i) {
    lsm.insert(Item{i, 0, i});
    std::vector<std::size_t> expected;
    for (int b = 63; b >= 0; --b) {
      if (i & (1ULL << b)) expected.push_back(std::size_t{1} << b);
    }
    EXPECT_EQ(capacities(lsm), expected) << "after " << i << " inserts";
    EXPECT_FALSE(lsm.validate()) << *lsm.validate();
  }
}

TEST(Lsm, ThreeInsertsGiveTwoBlocks) {
  SeqLsm lsm;
  lsm.insert(Item{5, 0, 0});
  lsm.insert(Item{2, 0, 1});
  lsm.insert(Item{7, 0, 2});
  EXPECT_EQ(capacities(lsm), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(keys_of(lsm.slots()[0].entries()), (std::vector<Key>{2, 5}));
  EXPECT_EQ(lsm.delete_min()->key, 2u);
  EXPECT_EQ(lsm.delete_min()->key, 5u);
  EXPECT_EQ(lsm.delete_min()->key, 7u);
  EXPECT_FALSE(lsm.delete_min());
  EXPECT_TRUE(lsm.empty());
}

TEST(Lsm, ShrinkKeepsOccupancyAboveHalf) {
  SeqLsm lsm;
  for (std::uint64_t i = 0; i < 16; ++i) lsm.insert(Item{i, 0, i});
  ASSERT_EQ(capacities(lsm), (std::vector<std::size_t>{16}));
  for (std::uint64_t i = 0; i < 8; ++i) {
    EXPECT_EQ(lsm.delete_min()->key, i);
    EXPECT_FALSE(lsm.validate()) << *lsm.validate();
  }
  EXPECT_EQ(capacities(lsm), (std::vector<std::size_t>{8}));
  EXPECT_EQ(lsm.size(), 8u);
}

TEST(Lsm, MatchesHeapOracle) {
  SplitMix64 rng(2024);
  SeqLsm lsm;
  std::priority_queue<Item, std::vector<Item>, ItemGreater> oracle;
  std::uint64_t seq = 0;
  for (int op = 0; op < 1000; ++op) {
    if (rng.below(2) == 0) {
      const Item it{rng.below(50), 0, seq++};
      lsm.insert(it);
      oracle.push(it);
    } else {
      auto got = lsm.delete_min();
      if (oracle.empty()) {
        EXPECT_FALSE(got);
      } else {
        ASSERT_TRUE(got);
        EXPECT_EQ(*got, oracle.top());
        oracle.pop();
      }
    }
    ASSERT_EQ(lsm.size(), oracle.size());
    ASSERT_FALSE(lsm.validate()) << *lsm.validate();
  }
}

TEST(Lsm, InsertSortedRunMerges) {
  SeqLsm lsm;
  lsm.insert(Item{10, 0, 0});
  lsm.insert(Item{11, 0, 1});
  lsm.insert_sorted(items({1, 2}));
  EXPECT_EQ(capacities(lsm), (std::vector<std::size_t>{4}));
  EXPECT_EQ(lsm.size(), 4u);
  EXPECT_EQ(lsm.delete_min()->key, 1u);
}

TEST(Lsm, ExtractLargest) {
  SeqLsm lsm;
  for (std::uint64_t i = 0; i < 5; ++i) lsm.insert(Item{i, 0, i});
  const auto slot = lsm.extract_largest();
  EXPECT_EQ(slot.capacity(), 4u);
  EXPECT_EQ(lsm.size(), 1u);
  EXPECT_FALSE(lsm.validate());
}

TEST(Lsm, ValidateDetectsBrokenSlots) {
  using Slot = LsmSlot<Item>;
  std::vector<Slot> slots;
  slots.push_back(Slot{Block<Item>::make(items({1, 2, 3, 4})), 2});
  EXPECT_TRUE(SeqLsm::validate_slots(slots, 2));  // occupancy 2 of capacity 4

  slots.clear();
  slots.push_back(Slot{Block<Item>::make(items({1, 2})), 0});
  slots.push_back(Slot{Block<Item>::make(items({3, 4})), 0});
  EXPECT_TRUE(SeqLsm::validate_slots(slots, 4));  // equal capacities

  slots.clear();
  slots.push_back(Slot{Block<Item>::make(items({1, 2})), 0});
  slots.push_back(Slot{Block<Item>::make(items({3})), 0});
  EXPECT_FALSE(SeqLsm::validate_slots(slots, 3));
  EXPECT_TRUE(SeqLsm::validate_slots(slots, 4));  // size mismatch
}

TEST(Lsm, GenerationTracksStructuralChanges) {
  SeqLsm lsm;
  lsm.insert(Item{1, 0, 0});
  lsm.insert(Item{2, 0, 1});
  lsm.insert(Item{3, 0, 2});
  const auto g = lsm.generation();
  // Head advance in the capacity-2 block without a shrink.
  lsm.insert(Item{4, 0, 3});
  EXPECT_NE(lsm.generation(), g);
  const auto g2 = lsm.generation();
  lsm.delete_min();  // 4 -> 3 items in a capacity-4 block, no rebuild
  EXPECT_EQ(lsm.generation(), g2);
}

}  // namespace
}  // namespace relaxpq
