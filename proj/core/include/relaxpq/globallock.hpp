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

#ifndef RELAXPQ_GLOBALLOCK_HPP_
#define RELAXPQ_GLOBALLOCK_HPP_

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <queue>
#include <vector>

#include "relaxpq/item.hpp"
#include "relaxpq/padded.hpp"

namespace relaxpq {

// Baseline: std::priority_queue behind a single mutex. Observers run while
// the lock is held, so their timestamps follow the lock's serialization.
class GlobalLockQueue {
 public:
  explicit GlobalLockQueue(std::size_t threads = 1) : counters_(threads) {}

  class Handle {
   public:
    Handle(GlobalLockQueue& q, std::size_t tid) : q_(&q), tid_(tid) {}

    template <class Observer = NoObserver>
    void insert(Key key, Value value, Observer&& on_visible = {}) {
      const Item item{key, value,
                      make_seq(static_cast<std::uint32_t>(tid_), q_->counters_[tid_].value++)};
      std::lock_guard lock(q_->mutex_);
      on_visible(item);
      q_->heap_.push(item);
    }

    template <class Observer = NoObserver>
    std::optional<Item> delete_min(Observer&& on_taken = {}) {
      std::lock_guard lock(q_->mutex_);
      if (q_->heap_.empty()) return std::nullopt;
      const Item item = q_->heap_.top();
      q_->heap_.pop();
      on_taken(item);
      return item;
    }

   private:
    GlobalLockQueue* q_;
    std::size_t tid_;
  };

  Handle handle(std::size_t tid) { return Handle(*this, tid); }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return heap_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::priority_queue<Item, std::vector<Item>, ItemGreater> heap_;
  std::vector<Padded<std::uint64_t>> counters_;
};

}  // namespace relaxpq

#endif  // RELAXPQ_GLOBALLOCK_HPP_
