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

#ifndef RELAXPQ_SLSM_HPP_
#define RELAXPQ_SLSM_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "relaxpq/epoch.hpp"
#include "relaxpq/item.hpp"
#include "relaxpq/item_pool.hpp"
#include "relaxpq/lsm.hpp"
#include "relaxpq/padded.hpp"
#include "relaxpq/rng.hpp"

namespace relaxpq {

// The candidate set for shared deletions: for every block, the entries in
// [head, upper) belong to the range. Built to hold the `k + 1` smallest live
// entries, so a deletion that picks any member skips at most k items.
struct PivotRange {
  std::vector<std::size_t> upper;
  std::size_t entries = 0;  // total entries covered, live or not
  std::size_t members = 0;  // live entries at build time
  std::optional<Item> max;  // largest member; the range is {e : e <= max}
  std::uint64_t version = 0;
};

// k-way head scan collecting the min(k + 1, live) smallest live entries.
template <class Entry>
PivotRange compute_pivots(std::span<const LsmSlot<Entry>> slots, std::size_t k) {
  using Traits = EntryTraits<Entry>;
  PivotRange range;
  range.upper.resize(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) range.upper[s] = slots[s].head;
  while (range.members < k + 1) {
    std::size_t best = slots.size();
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& block = *slots[s].block;
      std::size_t& c = range.upper[s];
      while (c < block.size() && !Traits::alive(block[c])) ++c;
      if (c == block.size()) continue;
      if (best == slots.size() ||
          item_less(Traits::item(block[c]), Traits::item((*slots[best].block)[range.upper[best]]))) {
        best = s;
      }
    }
    if (best == slots.size()) break;
    range.max = Traits::item((*slots[best].block)[range.upper[best]]);
    ++range.upper[best];
    ++range.members;
  }
  for (std::size_t s = 0; s < slots.size(); ++s) range.entries += range.upper[s] - slots[s].head;
  return range;
}

// Re-derives per-block bounds for an unchanged range max after the block
// list was rearranged.
template <class Entry>
void reindex_pivots(std::span<const LsmSlot<Entry>> slots, PivotRange& range) {
  using Traits = EntryTraits<Entry>;
  range.upper.assign(slots.size(), 0);
  range.entries = 0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    auto items = slots[s].entries();
    auto it = std::upper_bound(items.begin(), items.end(), *range.max,
                               [](const Item& m, const Entry& e) { return item_less(m, Traits::item(e)); });
    const auto n = static_cast<std::size_t>(it - items.begin());
    range.upper[s] = slots[s].head + n;
    range.entries += n;
  }
}

// Shared LSM: one global LSM whose deletions pick uniformly among a pivot
// range of at most k + 1 smallest items.
//
// The block list with its pivot range is an immutable State replaced by
// CAS; losers rebuild from the newer state and retry. Deletions do not
// replace the state, they only claim entries. The range is rebuilt when
// all of its entries are claimed or when an inserted batch undercuts it.
class Slsm {
 public:
  struct State {
    Lsm<SharedEntry> lsm;
    PivotRange pivots;
  };

  struct Candidate {
    const State* state = nullptr;
    const SharedEntry* entry = nullptr;
  };

  Slsm(std::size_t k, std::size_t threads, EpochDomain& epochs, std::uint64_t seed = 0)
      : k_(k), epochs_(&epochs), rngs_(threads) {
    for (std::size_t t = 0; t < threads; ++t) {
      rngs_[t].value = SplitMix64(derive_seed(seed, t, StreamPurpose::kQueue));
    }
    state_.store(new State{}, std::memory_order_release);
  }

  ~Slsm() { delete state_.load(std::memory_order_relaxed); }

  Slsm(const Slsm&) = delete;
  Slsm& operator=(const Slsm&) = delete;

  std::size_t k() const { return k_; }
  EpochDomain& epochs() const { return *epochs_; }

  // Adds a sorted run as one block.
  void insert_batch(std::size_t tid, std::span<const SharedEntry> batch) {
    if (batch.empty()) return;
    auto guard = epochs_->pin(tid);
    State* cur = state_.load(std::memory_order_acquire);
    for (;;) {
      auto next = std::make_unique<State>(State{cur->lsm, {}});
      next->lsm.prune();
      next->lsm.insert_sorted(std::vector<SharedEntry>(batch.begin(), batch.end()));
      const bool undercut = !cur->pivots.max || cur->pivots.members < k_ + 1 ||
                            item_less(batch.front().item, *cur->pivots.max);
      if (undercut) {
        next->pivots = compute_pivots<SharedEntry>(next->lsm.slots(), k_);
        next->pivots.version = cur->pivots.version + 1;
      } else {
        next->pivots = cur->pivots;
        reindex_pivots<SharedEntry>(next->lsm.slots(), next->pivots);
      }
      if (state_.compare_exchange_strong(cur, next.get(), std::memory_order_acq_rel,
                                         std::memory_order_acquire)) {
        next.release();
        epochs_->retire(tid, cur);
        return;
      }
    }
  }

  // A uniformly chosen live pivot member of the current state, rebuilding
  // the range if it is exhausted. Requires an active guard for `tid`;
  // nullopt means the shared LSM was observed empty.
  std::optional<Candidate> peek(std::size_t tid) {
    SplitMix64& rng = rngs_[tid].value;
    State* cur = state_.load(std::memory_order_acquire);
    for (;;) {
      if (cur->lsm.empty()) return std::nullopt;
      if (const SharedEntry* e = pick(*cur, rng)) return Candidate{cur, e};
      State* next = rebuilt(*cur);
      if (state_.compare_exchange_strong(cur, next, std::memory_order_acq_rel,
                                         std::memory_order_acquire)) {
        epochs_->retire(tid, cur);
        cur = next;
      } else {
        delete next;
      }
    }
  }

  // Version of the current pivot range. It changes whenever an item may
  // have entered the SLSM below the range maximum.
  std::uint64_t version() const { return state_.load(std::memory_order_acquire)->pivots.version; }

  // Claims a candidate unless the pivot range moved on since it was picked.
  bool take(const Candidate& c) const {
    const State* now = state_.load(std::memory_order_acquire);
    if (now->pivots.version != c.state->pivots.version) return false;
    return c.entry->take();
  }

  template <class Observer = NoObserver>
  std::optional<Item> delete_min(std::size_t tid, Observer&& on_taken = {}) {
    auto guard = epochs_->pin(tid);
    for (;;) {
      auto c = peek(tid);
      if (!c) return std::nullopt;
      prepare_observer(on_taken);
      if (take(*c)) {
        on_taken(c->entry->item);
        return c->entry->item;
      }
    }
  }

  // Forces a fresh range on the current state.
  void pivot_rebuild(std::size_t tid) {
    auto guard = epochs_->pin(tid);
    State* cur = state_.load(std::memory_order_acquire);
    for (;;) {
      State* next = rebuilt(*cur);
      if (state_.compare_exchange_strong(cur, next, std::memory_order_acq_rel,
                                         std::memory_order_acquire)) {
        epochs_->retire(tid, cur);
        return;
      }
      delete next;
    }
  }

  // Introspection; only meaningful while no other thread mutates.
  const State& state() const { return *state_.load(std::memory_order_acquire); }

  std::vector<Item> pivot_members() const {
    const State& s = state();
    std::vector<Item> out;
    const auto slots = s.lsm.slots();
    for (std::size_t b = 0; b < slots.size(); ++b) {
      for (std::size_t i = slots[b].head; i < s.pivots.upper[b]; ++i) {
        const SharedEntry& e = (*slots[b].block)[i];
        if (e.alive()) out.push_back(e.item);
      }
    }
    std::sort(out.begin(), out.end(), ItemLess{});
    return out;
  }

 private:
  State* rebuilt(const State& cur) const {
    auto* next = new State{cur.lsm, {}};
    next->lsm.prune();
    next->pivots = compute_pivots<SharedEntry>(next->lsm.slots(), k_);
    next->pivots.version = cur.pivots.version + 1;
    return next;
  }

  static const SharedEntry* pick(const State& s, SplitMix64& rng) {
    const std::size_t n = s.pivots.entries;
    if (n == 0) return nullptr;
    std::size_t r = rng.below(n);
    const auto slots = s.lsm.slots();
    std::size_t b = 0;
    while (r >= s.pivots.upper[b] - slots[b].head) {
      r -= s.pivots.upper[b] - slots[b].head;
      ++b;
    }
    // Cyclic scan from the drawn position for a live member.
    for (std::size_t step = 0; step < n; ++step) {
      const SharedEntry& e = (*slots[b].block)[slots[b].head + r];
      if (e.alive()) return &e;
      if (++r == s.pivots.upper[b] - slots[b].head) {
        r = 0;
        do {
          b = b + 1 == slots.size() ? 0 : b + 1;
        } while (s.pivots.upper[b] == slots[b].head);
      }
    }
    return nullptr;
  }

  std::size_t k_;
  EpochDomain* epochs_;
  std::vector<Padded<SplitMix64>> rngs_;
  alignas(kCacheLine) std::atomic<State*> state_{nullptr};
};

}  // namespace relaxpq

#endif  // RELAXPQ_SLSM_HPP_
