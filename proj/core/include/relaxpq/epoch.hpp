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

#ifndef RELAXPQ_EPOCH_HPP_
#define RELAXPQ_EPOCH_HPP_

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace relaxpq {

// Epoch-based reclamation for a fixed set of participant slots.
//
// A participant pins the domain (see Guard) while it may hold pointers to
// shared objects. Objects unlinked while others might still read them are
// retired; a retired object is freed once the global epoch has advanced
// twice past the epoch it was retired in, which requires every pinned
// participant to have observed the newer epochs.
//
// Slot `tid` must only be used by one thread at a time. Handing a slot to
// another thread is fine once the previous user is quiescent (e.g. joined).
class EpochDomain {
 public:
  static constexpr std::uint64_t kInactive = std::numeric_limits<std::uint64_t>::max();

  explicit EpochDomain(std::size_t participants);
  ~EpochDomain();

  EpochDomain(const EpochDomain&) = delete;
  EpochDomain& operator=(const EpochDomain&) = delete;

  class Guard {
   public:
    Guard(EpochDomain& domain, std::size_t tid) : domain_(&domain), tid_(tid) {
      domain_->enter(tid_);
    }
    ~Guard() {
      if (domain_ != nullptr) domain_->exit(tid_);
    }
    Guard(Guard&& other) noexcept : domain_(other.domain_), tid_(other.tid_) {
      other.domain_ = nullptr;
    }
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;
    Guard& operator=(Guard&&) = delete;

   private:
    EpochDomain* domain_;
    std::size_t tid_;
  };

  Guard pin(std::size_t tid) { return Guard(*this, tid); }

  template <class T>
  void retire(std::size_t tid, T* p) {
    retire(tid, p, [](void* q) { delete static_cast<T*>(q); });
  }
  void retire(std::size_t tid, void* p, void (*deleter)(void*));

  std::size_t participants() const { return count_; }
  std::uint64_t epoch() const { return global_.load(std::memory_order_acquire); }

  // Objects retired but not yet freed, across all participants. Only exact
  // when no participant is running.
  std::size_t pending() const;

  // Frees everything retired so far. Requires that no participant is pinned.
  void drain();

  // Attempts one epoch advance on behalf of `tid` and frees what became safe.
  void try_advance(std::size_t tid);

 private:
  struct Retired {
    void* ptr;
    void (*deleter)(void*);
  };

  struct alignas(64) Record {
    std::atomic<std::uint64_t> announced{kInactive};
    unsigned nesting = 0;
    std::size_t retires = 0;
    std::array<std::vector<Retired>, 3> bags;
    std::array<std::uint64_t, 3> bag_epoch{};
  };

  void enter(std::size_t tid);
  void exit(std::size_t tid);
  static void free_bag(std::vector<Retired>& bag);
  void collect(Record& rec, std::uint64_t global);

  std::size_t count_;
  std::unique_ptr<Record[]> records_;
  alignas(64) std::atomic<std::uint64_t> global_{3};
};

}  // namespace relaxpq

#endif  // RELAXPQ_EPOCH_HPP_
