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

#ifndef RELAXPQ_BLOCK_HPP_
#define RELAXPQ_BLOCK_HPP_

#include <bit>
#include <cassert>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "relaxpq/item.hpp"

namespace relaxpq {

// How a block entry exposes its item and whether it still counts. Plain items
// are always live; shared entries (see item_pool.hpp) die once some thread
// claims them.
template <class Entry>
struct EntryTraits;

template <>
struct EntryTraits<Item> {
  static constexpr const Item& item(const Item& e) { return e; }
  static constexpr bool alive(const Item&) { return true; }
};

// An immutable sorted run of entries with power-of-two capacity.
//
// Blocks are shared between an LSM and any snapshots taken of it, so they
// are never modified after construction; consumption is tracked by the
// owning LSM's per-block head index.
template <class Entry>
class Block {
 public:
  using Traits = EntryTraits<Entry>;

  // `items` must be non-empty and sorted ascending by (key, seq). The
  // capacity is the smallest power of two that holds them, so a freshly
  // built block is always more than half full.
  static std::shared_ptr<const Block> make(std::vector<Entry> items) {
    assert(!items.empty());
    return std::shared_ptr<const Block>(new Block(std::move(items)));
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  std::span<const Entry> items() const { return items_; }
  const Entry& operator[](std::size_t i) const { return items_[i]; }

 private:
  explicit Block(std::vector<Entry> items)
      : capacity_(std::bit_ceil(items.size())), items_(std::move(items)) {}

  std::size_t capacity_;
  std::vector<Entry> items_;
};

// Two-way merge of the live entries of `a` and `b`. Entries naming the same
// item (equal key and seq) are collapsed to one; that only happens for
// shared entries that reached a structure along two paths.
template <class Entry>
std::vector<Entry> merge_live(std::span<const Entry> a, std::span<const Entry> b) {
  using Traits = EntryTraits<Entry>;
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  auto push = [&out](const Entry& e) {
    if (!Traits::alive(e)) return;
    if (!out.empty()) {
      const Item& last = Traits::item(out.back());
      const Item& cur = Traits::item(e);
      if (last.key == cur.key && last.seq == cur.seq) return;
    }
    out.push_back(e);
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (item_less(Traits::item(b[j]), Traits::item(a[i]))) {
      push(b[j++]);
    } else {
      push(a[i++]);
    }
  }
  for (; i < a.size(); ++i) push(a[i]);
  for (; j < b.size(); ++j) push(b[j]);
  return out;
}

// Merge two blocks into a new one of the resulting capacity. For two valid
// blocks of equal capacity C that is 2C.
template <class Entry>
std::shared_ptr<const Block<Entry>> block_merge(const Block<Entry>& a, const Block<Entry>& b) {
  auto merged = merge_live<Entry>(a.items(), b.items());
  if (merged.empty()) return nullptr;
  return Block<Entry>::make(std::move(merged));
}

}  // namespace relaxpq

#endif  // RELAXPQ_BLOCK_HPP_
