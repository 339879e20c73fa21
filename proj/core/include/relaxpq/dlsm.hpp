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

#ifndef RELAXPQ_DLSM_HPP_
#define RELAXPQ_DLSM_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "relaxpq/epoch.hpp"
#include "relaxpq/item.hpp"
#include "relaxpq/item_pool.hpp"
#include "relaxpq/lsm.hpp"

namespace relaxpq {

// Distributed LSM: one private LSM per thread. A thread only ever deletes
// from its own LSM; when that runs dry it copies ("spies") the published
// contents of another thread's LSM. Copies share claim nodes with the
// originals, so each item is still delivered at most once.
//
// Each owner republishes an immutable snapshot of its block list after
// every structural change. Spies read snapshots under an epoch guard and
// retired snapshots are reclaimed through the shared EpochDomain.
class Dlsm {
 private:
  struct Snapshot;
  struct Local;

 public:
  using LocalLsm = Lsm<SharedEntry>;
  using Location = LocalLsm::Location;
  using Slot = LocalLsm::Slot;

  Dlsm(std::size_t threads, EpochDomain& epochs) : epochs_(&epochs) {
    locals_.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) locals_.push_back(std::make_unique<Local>());
  }

  ~Dlsm() {
    for (auto& local : locals_) delete local->published.load(std::memory_order_relaxed);
  }

  Dlsm(const Dlsm&) = delete;
  Dlsm& operator=(const Dlsm&) = delete;

  std::size_t threads() const { return locals_.size(); }
  EpochDomain& epochs() const { return *epochs_; }

  class Handle {
   public:
    Handle(Dlsm& owner, std::size_t tid) : dlsm_(&owner), tid_(tid), local_(owner.locals_[tid].get()) {}

    std::size_t tid() const { return tid_; }

    // Entries in the local LSM, including ones other threads have claimed
    // but this thread has not yet skipped.
    std::size_t size() const { return local_->lsm.size(); }
    const LocalLsm& lsm() const { return local_->lsm; }

    SharedEntry make_entry(const Item& item) { return local_->pool.make(item); }

    void push(const SharedEntry& e) { local_->lsm.insert(e); }

    Slot extract_largest() { return local_->lsm.extract_largest(); }

    // Minimal live local entry.
    std::optional<Location> peek() const { return local_->lsm.peek(); }
    const SharedEntry& at(Location loc) const { return local_->lsm.at(loc); }

    // Claims the entry at `loc` and drops it from the local LSM whether or
    // not the claim succeeded (a lost claim means it is dead anyway).
    bool take(Location loc) {
      const bool won = local_->lsm.at(loc).take();
      local_->lsm.remove(loc);
      return won;
    }

    // Makes the current block list visible to spies if it changed since the
    // last publication.
    void publish() {
      if (local_->published_generation == local_->lsm.generation()) return;
      local_->published_generation = local_->lsm.generation();
      auto* snap = new Snapshot{std::vector<Slot>(local_->lsm.slots().begin(),
                                                  local_->lsm.slots().end())};
      Snapshot* old = local_->published.exchange(snap, std::memory_order_acq_rel);
      if (old != nullptr) dlsm_->epochs_->retire(tid_, old);
    }

    // Live entries of the victim's published snapshot, sorted per block.
    std::vector<std::vector<SharedEntry>> collect(std::size_t victim) const {
      std::vector<std::vector<SharedEntry>> runs;
      auto guard = dlsm_->epochs_->pin(tid_);
      const Snapshot* snap = dlsm_->locals_[victim]->published.load(std::memory_order_acquire);
      if (snap == nullptr) return runs;
      for (const Slot& slot : snap->slots) {
        std::vector<SharedEntry> run;
        for (const SharedEntry& e : slot.entries()) {
          if (e.alive()) run.push_back(e);
        }
        if (!run.empty()) runs.push_back(std::move(run));
      }
      return runs;
    }

    // Copies the first non-empty victim snapshot, scanning round-robin from
    // tid + 1, into the local LSM. Dead local leftovers are discarded first.
    // Returns the number of entries copied.
    std::size_t spy() {
      const std::size_t p = dlsm_->threads();
      if (!local_->lsm.empty() && !local_->lsm.peek()) {
        local_->lsm.clear();
        publish();
      }
      for (std::size_t step = 1; step < p; ++step) {
        const std::size_t victim = (tid_ + step) % p;
        auto runs = collect(victim);
        if (runs.empty()) continue;
        std::size_t copied = 0;
        for (auto& run : runs) {
          copied += run.size();
          local_->lsm.insert_sorted(std::move(run));
        }
        publish();
        return copied;
      }
      return 0;
    }

    template <class Observer = NoObserver>
    void insert(const Item& item, Observer&& on_visible = {}) {
      auto guard = dlsm_->epochs_->pin(tid_);
      const SharedEntry e = make_entry(item);
      on_visible(item);
      push(e);
      publish();
    }

    // Deletes the local minimum; spies once if the local LSM is empty.
    template <class Observer = NoObserver>
    std::optional<Item> delete_min(Observer&& on_taken = {}) {
      auto guard = dlsm_->epochs_->pin(tid_);
      bool spied = false;
      for (;;) {
        auto loc = peek();
        if (!loc) {
          if (spied) return std::nullopt;
          spied = true;
          spy();
          continue;
        }
        const Item item = at(*loc).item;
        prepare_observer(on_taken);
        const bool won = take(*loc);
        publish();
        if (won) {
          on_taken(item);
          return item;
        }
      }
    }

   private:
    Dlsm* dlsm_;
    std::size_t tid_;
    Local* local_;
  };

  Handle handle(std::size_t tid) { return Handle(*this, tid); }

 private:
  struct Snapshot {
    std::vector<Slot> slots;
  };

  struct alignas(64) Local {
    LocalLsm lsm;
    ItemPool pool;
    std::atomic<Snapshot*> published{nullptr};
    std::uint64_t published_generation = ~std::uint64_t{0};
  };

  friend class Handle;

  EpochDomain* epochs_;
  std::vector<std::unique_ptr<Local>> locals_;
};

}  // namespace relaxpq

#endif  // RELAXPQ_DLSM_HPP_
