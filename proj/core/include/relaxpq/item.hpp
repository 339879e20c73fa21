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

#ifndef RELAXPQ_ITEM_HPP_
#define RELAXPQ_ITEM_HPP_

#include <compare>
#include <cstdint>

namespace relaxpq {

using Key = std::uint64_t;
using Value = std::uint64_t;

// Smaller keys have higher priority. Equal keys are ordered by `seq`, which
// is unique per run: the producing thread id sits in the top 16 bits and a
// per-thread counter in the low 48.
struct Item {
  Key key = 0;
  Value value = 0;
  std::uint64_t seq = 0;

  friend constexpr bool operator==(const Item&, const Item&) = default;
};

inline constexpr int kSeqThreadShift = 48;
inline constexpr std::uint64_t kSeqCounterMask =
    (std::uint64_t{1} << kSeqThreadShift) - 1;

constexpr std::uint64_t make_seq(std::uint32_t thread, std::uint64_t counter) {
  return (std::uint64_t{thread} << kSeqThreadShift) | (counter & kSeqCounterMask);
}

constexpr std::uint32_t seq_thread(std::uint64_t seq) {
  return static_cast<std::uint32_t>(seq >> kSeqThreadShift);
}

constexpr std::uint64_t seq_counter(std::uint64_t seq) {
  return seq & kSeqCounterMask;
}

// Total priority order over items: (key, seq) lexicographic.
constexpr bool item_less(const Item& a, const Item& b) {
  return a.key < b.key || (a.key == b.key && a.seq < b.seq);
}

struct ItemLess {
  constexpr bool operator()(const Item& a, const Item& b) const {
    return item_less(a, b);
  }
};

struct ItemGreater {
  constexpr bool operator()(const Item& a, const Item& b) const {
    return item_less(b, a);
  }
};

// Callback type used by queues that do not care about operation timing.
struct NoObserver {
  constexpr void operator()(const Item&) const noexcept {}
};

// Deletion observers may define prepare(). Queues whose deletions commit
// with a single atomic claim call it right before each claim attempt, and
// the observer's call operator follows only if the claim succeeded.
template <class Observer>
constexpr void prepare_observer(Observer& o) {
  if constexpr (requires { o.prepare(); }) o.prepare();
}

}  // namespace relaxpq

#endif  // RELAXPQ_ITEM_HPP_
