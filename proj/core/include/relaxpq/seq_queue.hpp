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

#ifndef RELAXPQ_SEQ_QUEUE_HPP_
#define RELAXPQ_SEQ_QUEUE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "relaxpq/item.hpp"
#include "relaxpq/lsm.hpp"

namespace relaxpq {

// The sequential LSM exposed through the same handle interface as the
// concurrent queues. Single-threaded only.
class SeqLsmQueue {
 public:
  SeqLsmQueue() = default;

  class Handle {
   public:
    Handle(SeqLsmQueue& q, std::size_t tid) : q_(&q), tid_(tid) {}

    template <class Observer = NoObserver>
    void insert(Key key, Value value, Observer&& on_visible = {}) {
      const Item item{key, value, make_seq(static_cast<std::uint32_t>(tid_), q_->counter_++)};
      on_visible(item);
      q_->lsm_.insert(item);
    }

    template <class Observer = NoObserver>
    std::optional<Item> delete_min(Observer&& on_taken = {}) {
      auto item = q_->lsm_.delete_min();
      if (item) on_taken(*item);
      return item;
    }

   private:
    SeqLsmQueue* q_;
    std::size_t tid_;
  };

  Handle handle(std::size_t tid) { return Handle(*this, tid); }

  const SeqLsm& lsm() const { return lsm_; }

 private:
  SeqLsm lsm_;
  std::uint64_t counter_ = 0;
};

}  // namespace relaxpq

#endif  // RELAXPQ_SEQ_QUEUE_HPP_
