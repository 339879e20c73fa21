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

#ifndef RELAXPQ_LSM_HPP_
#define RELAXPQ_LSM_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relaxpq/block.hpp"
#include "relaxpq/item.hpp"

namespace relaxpq {

// A block plus the index of its first unconsumed entry.
template <class Entry>
struct LsmSlot {
  std::shared_ptr<const Block<Entry>> block;
  std::size_t head = 0;

  std::size_t capacity() const { return block->capacity(); }
  std::size_t occupancy() const { return block->size() - head; }
  std::span<const Entry> entries() const { return block->items().subspan(head); }
};

// Log-structured merge priority queue: a list of sorted blocks with pairwise
// distinct power-of-two capacities, kept in descending capacity order.
//
// Insertion adds a singleton block and merges equal capacities until they
// are distinct again (a binary counter). Deletion advances the head of the
// block holding the minimum. When a block's occupancy drops to half its
// capacity it is rebuilt at the smaller capacity and re-merged, so every
// block keeps occupancy in (C/2, C].
//
// Not thread-safe. Slots may be copied out (see `slots()`) and handed to
// other threads since the blocks they reference are immutable.
template <class Entry>
class Lsm {
 public:
  using Traits = EntryTraits<Entry>;
  using Slot = LsmSlot<Entry>;
  using BlockPtr = std::shared_ptr<const Block<Entry>>;

  struct Location {
    std::size_t slot = 0;
    std::size_t index = 0;  // absolute index into the slot's block
  };

  Lsm() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const Slot> slots() const { return slots_; }

  // Bumped whenever the block list changes (not on plain head advances).
  std::uint64_t generation() const { return generation_; }

  void insert(const Entry& e) { place(Block<Entry>::make({e})); }

  // Adds a sorted run as one block (merging by the same rule as insert).
  void insert_sorted(std::vector<Entry> sorted) {
    if (sorted.empty()) return;
    place(Block<Entry>::make(std::move(sorted)));
  }

  void insert_block(BlockPtr block) {
    if (block) place(std::move(block));
  }

  // Location of the minimal live entry, skipping consumed or dead ones.
  std::optional<Location> peek() const {
    std::optional<Location> best;
    const Item* best_item = nullptr;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      const Slot& slot = slots_[s];
      const Block<Entry>& block = *slot.block;
      std::size_t i = slot.head;
      while (i < block.size() && !Traits::alive(block[i])) ++i;
      if (i == block.size()) continue;
      const Item& cand = Traits::item(block[i]);
      if (best_item == nullptr || item_less(cand, *best_item)) {
        best = Location{s, i};
        best_item = &cand;
      }
    }
    return best;
  }

  const Entry& at(Location loc) const { return (*slots_[loc.slot].block)[loc.index]; }

  // Consumes the entry at `loc` and everything before it in its block. The
  // caller guarantees the skipped entries are dead (as `peek` does).
  Entry remove(Location loc) {
    Slot& slot = slots_[loc.slot];
    Entry e = (*slot.block)[loc.index];
    size_ -= loc.index + 1 - slot.head;
    slot.head = loc.index + 1;
    shrink(loc.slot);
    return e;
  }

  std::optional<Entry> delete_min() {
    auto loc = peek();
    if (!loc) return std::nullopt;
    return remove(*loc);
  }

  // Detaches the block with the largest capacity.
  Slot extract_largest() {
    ++generation_;
    Slot s = std::move(slots_.front());
    slots_.erase(slots_.begin());
    size_ -= s.occupancy();
    return s;
  }

  // Advances heads past dead entries and restores occupancy bounds. Only
  // meaningful for entries that can die outside this LSM.
  void prune() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        Slot& slot = slots_[s];
        std::size_t i = slot.head;
        while (i < slot.block->size() && !Traits::alive((*slot.block)[i])) ++i;
        if (i == slot.head) continue;
        size_ -= i - slot.head;
        slot.head = i;
        // A shrink may erase or reorder slots, so rescan from the top.
        shrink(s);
        changed = true;
        break;
      }
    }
  }

  void clear() {
    ++generation_;
    slots_.clear();
    size_ = 0;
  }

  // Sorted copy of all unconsumed entries (live or not).
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(size_);
    for (const Slot& s : slots_) {
      out = merge_all(std::move(out), s.entries());
    }
    return out;
  }

  // Checks every structural invariant. Returns a description of the first
  // violation found, or nullopt.
  std::optional<std::string> validate() const { return validate_slots(slots_, size_); }

  static std::optional<std::string> validate_slots(std::span<const Slot> slots,
                                                   std::size_t expected_size) {
    std::size_t total = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const Slot& slot = slots[s];
      if (!slot.block) return "slot " + std::to_string(s) + " has no block";
      const std::size_t cap = slot.capacity();
      const std::size_t occ = slot.occupancy();
      if (!std::has_single_bit(cap)) {
        return "capacity " + std::to_string(cap) + " is not a power of two";
      }
      if (slot.block->size() > cap) return "block holds more items than its capacity";
      if (occ == 0 || occ * 2 <= cap) {
        return "occupancy " + std::to_string(occ) + " outside (C/2, C] for C=" +
               std::to_string(cap);
      }
      if (s > 0 && slots[s - 1].capacity() <= cap) {
        return "capacities not strictly descending at slot " + std::to_string(s);
      }
      auto items = slot.entries();
      for (std::size_t i = 1; i < items.size(); ++i) {
        if (!item_less(Traits::item(items[i - 1]), Traits::item(items[i]))) {
          return "block at slot " + std::to_string(s) + " not strictly sorted";
        }
      }
      total += occ;
    }
    if (total != expected_size) {
      return "size " + std::to_string(expected_size) + " != sum of occupancies " +
             std::to_string(total);
    }
    return std::nullopt;
  }

 private:
  static std::vector<Entry> merge_all(std::vector<Entry> acc, std::span<const Entry> run) {
    std::vector<Entry> out;
    out.reserve(acc.size() + run.size());
    std::merge(acc.begin(), acc.end(), run.begin(), run.end(), std::back_inserter(out),
               [](const Entry& a, const Entry& b) {
                 return item_less(Traits::item(a), Traits::item(b));
               });
    return out;
  }

  // Inserts `block`, merging with any slot of equal capacity until all
  // capacities are distinct.
  void place(BlockPtr block) {
    ++generation_;
    while (block) {
      auto same = std::find_if(slots_.begin(), slots_.end(), [&](const Slot& s) {
        return s.capacity() == block->capacity();
      });
      if (same == slots_.end()) break;
      auto merged = merge_live<Entry>(same->entries(), block->items());
      size_ -= same->occupancy();
      slots_.erase(same);
      block = merged.empty() ? nullptr : Block<Entry>::make(std::move(merged));
    }
    if (!block) return;
    size_ += block->size();
    auto pos = std::find_if(slots_.begin(), slots_.end(), [&](const Slot& s) {
      return s.capacity() < block->capacity();
    });
    slots_.insert(pos, Slot{std::move(block), 0});
  }

  // Rebuilds slot `s` at a smaller capacity once it is at most half full.
  void shrink(std::size_t s) {
    Slot& slot = slots_[s];
    if (slot.occupancy() * 2 > slot.capacity()) return;
    std::vector<Entry> rest;
    rest.reserve(slot.occupancy());
    for (const Entry& e : slot.entries()) {
      if (Traits::alive(e)) rest.push_back(e);
    }
    ++generation_;
    size_ -= slot.occupancy();
    slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(s));
    if (!rest.empty()) place(Block<Entry>::make(std::move(rest)));
  }

  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::uint64_t generation_ = 0;
};

// The sequential LSM over plain items.
using SeqLsm = Lsm<Item>;

}  // namespace relaxpq

#endif  // RELAXPQ_LSM_HPP_
