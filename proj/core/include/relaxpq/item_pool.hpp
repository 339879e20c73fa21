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

#ifndef RELAXPQ_ITEM_POOL_HPP_
#define RELAXPQ_ITEM_POOL_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "relaxpq/block.hpp"
#include "relaxpq/item.hpp"

namespace relaxpq {

// Claim word for one item that may be referenced from several structures at
// once (a DLSM block, a spy's copy, the shared LSM). An even version means
// the item is live; claiming it bumps the version to odd with a CAS, and
// only one claimant can win. A node is recycled by its owning pool once odd,
// after which stale references still fail their version check.
struct ItemNode {
  std::atomic<std::uint64_t> version{1};
};

// What blocks in the concurrent structures store: a copy of the item plus
// the node/version pair that decides whether it is still live.
struct SharedEntry {
  Item item;
  ItemNode* node = nullptr;
  std::uint64_t version = 0;

  bool alive() const { return node->version.load(std::memory_order_acquire) == version; }

  // One-shot claim; true for exactly one caller per (node, version).
  bool take() const {
    std::uint64_t expected = version;
    return node->version.compare_exchange_strong(expected, version + 1,
                                                 std::memory_order_acq_rel,
                                                 std::memory_order_relaxed);
  }
};

template <>
struct EntryTraits<SharedEntry> {
  static const Item& item(const SharedEntry& e) { return e.item; }
  static bool alive(const SharedEntry& e) { return e.alive(); }
};

// Per-thread allocator of claim nodes. Nodes live until the pool is
// destroyed and are reused once claimed, so references held by other
// threads never dangle.
class ItemPool {
 public:
  ItemPool() = default;
  ItemPool(const ItemPool&) = delete;
  ItemPool& operator=(const ItemPool&) = delete;

  SharedEntry make(const Item& item) {
    ItemNode* node = acquire_node();
    const std::uint64_t v = node->version.load(std::memory_order_relaxed) + 1;
    node->version.store(v, std::memory_order_relaxed);
    return SharedEntry{item, node, v};
  }

  std::size_t capacity() const { return nodes_; }

 private:
  static constexpr std::size_t kChunk = 1024;
  static constexpr std::size_t kProbe = 4;

  ItemNode& node_at(std::size_t i) { return chunks_[i / kChunk][i % kChunk]; }

  static bool is_free(const ItemNode& n) {
    return (n.version.load(std::memory_order_acquire) & 1) != 0;
  }

  ItemNode* acquire_node() {
    for (std::size_t p = 0; p < kProbe && nodes_ > 0; ++p) {
      ItemNode& n = node_at(cursor_);
      cursor_ = cursor_ + 1 == nodes_ ? 0 : cursor_ + 1;
      if (is_free(n)) return &n;
    }
    if (nodes_ % kChunk == 0) chunks_.push_back(std::make_unique<ItemNode[]>(kChunk));
    return &node_at(nodes_++);
  }

  std::vector<std::unique_ptr<ItemNode[]>> chunks_;
  std::size_t nodes_ = 0;
  std::size_t cursor_ = 0;
};

}  // namespace relaxpq

#endif  // RELAXPQ_ITEM_POOL_HPP_
