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

#ifndef RELAXPQ_MULTIQUEUE_HPP_
#define RELAXPQ_MULTIQUEUE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relaxpq/item.hpp"
#include "relaxpq/padded.hpp"
#include "relaxpq/rng.hpp"

namespace relaxpq {

// MultiQueue: c * P sequential binary heaps, each behind its own lock.
// Insert pushes to a random heap; delete pops the smaller top of two
// distinct random heaps. Tops are cached in atomics so the comparison needs
// no locks; only the chosen heap is locked (try-lock, re-sample on
// conflict). Random sampling cannot prove emptiness, so after repeated
// empty samples a sweep over all heaps decides.
class MultiQueue {
 private:
  struct Queue;
  struct ThreadState;

 public:
  static constexpr std::size_t kDefaultC = 4;

  MultiQueue(std::size_t c, std::size_t threads, std::uint64_t seed = 0)
      : queues_(checked_count(c, threads)), threads_(threads) {
    for (std::size_t t = 0; t < threads; ++t) {
      per_thread_.push_back(std::make_unique<ThreadState>());
      per_thread_.back()->rng = SplitMix64(derive_seed(seed, t, StreamPurpose::kQueue));
    }
  }

  std::size_t queue_count() const { return queues_.size(); }
  std::size_t threads() const { return threads_; }

  class Handle {
   public:
    Handle(MultiQueue& q, std::size_t tid) : q_(&q), tid_(tid), self_(q.per_thread_[tid].get()) {}

    std::size_t tid() const { return tid_; }

    template <class Observer = NoObserver>
    void insert(Key key, Value value, Observer&& on_visible = {}) {
      const Item item{key, value, make_seq(static_cast<std::uint32_t>(tid_), self_->counter++)};
      for (;;) {
        Queue& q = q_->queues_[self_->rng.below(q_->queues_.size())];
        std::unique_lock lock(q.mutex, std::try_to_lock);
        if (!lock.owns_lock()) continue;
        on_visible(item);
        q.heap.push_back(item);
        std::push_heap(q.heap.begin(), q.heap.end(), ItemGreater{});
        q.publish();
        return;
      }
    }

    template <class Observer = NoObserver>
    std::optional<Item> delete_min(Observer&& on_taken = {}) {
      const std::size_t n = q_->queues_.size();
      const std::size_t max_empty = 2 * n + 8;
      std::size_t empty_rounds = 0;
      while (empty_rounds < max_empty) {
        std::size_t i = self_->rng.below(n);
        std::size_t j = i;
        if (n > 1) {
          j = self_->rng.below(n - 1);
          if (j >= i) ++j;
        }
        const auto ti = q_->queues_[i].top();
        const auto tj = q_->queues_[j].top();
        if (!ti && !tj) {
          ++empty_rounds;
          continue;
        }
        const std::size_t pick = (!tj || (ti && *ti <= *tj)) ? i : j;
        const Key seen = pick == i ? *ti : *tj;
        Queue& q = q_->queues_[pick];
        std::unique_lock lock(q.mutex, std::try_to_lock);
        if (!lock.owns_lock()) continue;
        if (q.heap.empty() || q.heap.front().key != seen) continue;
        return pop_locked(q, on_taken);
      }
      return sweep(on_taken);
    }

   private:
    template <class Observer>
    std::optional<Item> sweep(Observer& on_taken) {
      for (Queue& q : q_->queues_) {
        std::unique_lock lock(q.mutex);
        if (!q.heap.empty()) return pop_locked(q, on_taken);
      }
      return std::nullopt;
    }

    MultiQueue* q_;
    std::size_t tid_;
    ThreadState* self_;
  };

  Handle handle(std::size_t tid) { return Handle(*this, tid); }

  // Checks the heap property of every queue and returns the total size.
  // Requires quiescence.
  std::size_t validate() const {
    std::size_t total = 0;
    for (const Queue& q : queues_) {
      if (!std::is_heap(q.heap.begin(), q.heap.end(), ItemGreater{})) {
        throw std::logic_error("multiqueue heap property violated");
      }
      total += q.heap.size();
    }
    return total;
  }

  std::vector<std::size_t> queue_sizes() const {
    std::vector<std::size_t> out;
    for (const Queue& q : queues_) out.push_back(q.heap.size());
    return out;
  }

 private:
  struct alignas(kCacheLine) Queue {
    std::mutex mutex;
    std::vector<Item> heap;
    std::atomic<Key> top_key{0};
    std::atomic<bool> nonempty{false};

    void publish() {
      if (heap.empty()) {
        nonempty.store(false, std::memory_order_release);
      } else {
        top_key.store(heap.front().key, std::memory_order_relaxed);
        nonempty.store(true, std::memory_order_release);
      }
    }

    std::optional<Key> top() const {
      if (!nonempty.load(std::memory_order_acquire)) return std::nullopt;
      return top_key.load(std::memory_order_relaxed);
    }
  };

  struct alignas(kCacheLine) ThreadState {
    SplitMix64 rng;
    std::uint64_t counter = 0;
  };

  template <class Observer>
  static std::optional<Item> pop_locked(Queue& q, Observer& on_taken) {
    std::pop_heap(q.heap.begin(), q.heap.end(), ItemGreater{});
    const Item item = q.heap.back();
    q.heap.pop_back();
    q.publish();
    on_taken(item);
    return item;
  }

  static std::size_t checked_count(std::size_t c, std::size_t threads) {
    if (c == 0 || threads == 0) throw std::invalid_argument("multiqueue needs c >= 1 and P >= 1");
    return c * threads;
  }

  std::vector<Queue> queues_;
  std::size_t threads_;
  std::vector<std::unique_ptr<ThreadState>> per_thread_;
};

}  // namespace relaxpq

#endif  // RELAXPQ_MULTIQUEUE_HPP_
