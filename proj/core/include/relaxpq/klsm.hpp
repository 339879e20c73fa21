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

#ifndef RELAXPQ_KLSM_HPP_
#define RELAXPQ_KLSM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "relaxpq/dlsm.hpp"
#include "relaxpq/epoch.hpp"
#include "relaxpq/item.hpp"
#include "relaxpq/padded.hpp"
#include "relaxpq/slsm.hpp"

namespace relaxpq {

// The k-LSM: a DLSM capped at k entries per thread on top of an SLSM whose
// pivot range holds at most k + 1 items. While the local LSM holds k
// entries an insert spills its largest block into the SLSM, then goes local.
// Deletions take the smaller of the local minimum and an SLSM pivot pick. A deletion skips at
// most k(P - 1) items held by other threads plus k in the SLSM, so the
// returned item has rank at most kP + 1.
//
// The number of threads P is fixed at construction; thread t uses handle(t)
// exclusively.
class Klsm {
 public:
  Klsm(std::size_t k, std::size_t threads, std::uint64_t seed = 0)
      : k_(k),
        epochs_(threads),
        dlsm_(threads, epochs_),
        slsm_(k, threads, epochs_, seed),
        counters_(threads) {}

  std::size_t k() const { return k_; }
  std::size_t threads() const { return dlsm_.threads(); }
  std::uint64_t rank_bound() const { return std::uint64_t{k_} * threads() + 1; }

  Dlsm& dlsm() { return dlsm_; }
  Slsm& slsm() { return slsm_; }
  EpochDomain& epochs() { return epochs_; }

  class Handle {
   public:
    Handle(Klsm& q, std::size_t tid) : q_(&q), tid_(tid), local_(q.dlsm_.handle(tid)) {}

    std::size_t tid() const { return tid_; }
    const Dlsm::Handle& local() const { return local_; }

    template <class Observer = NoObserver>
    void insert(Key key, Value value, Observer&& on_visible = {}) {
      auto guard = q_->epochs_.pin(tid_);
      const Item item{key, value, make_seq(static_cast<std::uint32_t>(tid_), q_->counters_[tid_].value++)};
      const SharedEntry e = local_.make_entry(item);
      if (q_->k_ == 0) {
        on_visible(item);
        q_->slsm_.insert_batch(tid_, std::span<const SharedEntry>(&e, 1));
        return;
      }
      // Spill before pushing so the local LSM never holds more than k items.
      while (local_.size() >= q_->k_) spill();
      on_visible(item);
      local_.push(e);
      local_.publish();
    }

    template <class Observer = NoObserver>
    std::optional<Item> delete_min(Observer&& on_taken = {}) {
      auto guard = q_->epochs_.pin(tid_);
      bool spied = false;
      for (;;) {
        const std::uint64_t seen = q_->slsm_.version();
        auto local = local_.peek();
        auto shared = q_->slsm_.peek(tid_);
        if (!local && !shared) {
          if (spied || q_->threads() == 1) return std::nullopt;
          spied = true;
          local_.spy();
          continue;
        }
        prepare_observer(on_taken);
        // Ties go to the local side.
        if (local && (!shared || !item_less(shared->entry->item, local_.at(*local).item))) {
          // The local minimum is only good if nothing smaller reached the
          // SLSM since it was compared.
          const std::uint64_t basis = shared ? shared->state->pivots.version : seen;
          if (q_->slsm_.version() != basis) continue;
          const Item item = local_.at(*local).item;
          const bool won = local_.take(*local);
          local_.publish();
          if (won) {
            on_taken(item);
            return item;
          }
        } else if (q_->slsm_.take(*shared)) {
          on_taken(shared->entry->item);
          return shared->entry->item;
        }
      }
    }

   private:
    // Moves the largest local block to the SLSM. The block is published
    // there before it leaves the local LSM, so its items stay reachable.
    void spill() {
      const auto& largest = local_.lsm().slots().front();
      std::vector<SharedEntry> batch;
      batch.reserve(largest.occupancy());
      for (const SharedEntry& e : largest.entries()) {
        if (e.alive()) batch.push_back(e);
      }
      q_->slsm_.insert_batch(tid_, batch);
      local_.extract_largest();
    }

    Klsm* q_;
    std::size_t tid_;
    Dlsm::Handle local_;
  };

  Handle handle(std::size_t tid) { return Handle(*this, tid); }

 private:
  std::size_t k_;
  EpochDomain epochs_;
  Dlsm dlsm_;
  Slsm slsm_;
  std::vector<Padded<std::uint64_t>> counters_;
};

}  // namespace relaxpq

#endif  // RELAXPQ_KLSM_HPP_
