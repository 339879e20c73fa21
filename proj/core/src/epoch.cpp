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

#include "relaxpq/epoch.hpp"

#include <cassert>

namespace relaxpq {

namespace {
constexpr std::size_t kAdvanceEvery = 64;
}  // namespace

EpochDomain::EpochDomain(std::size_t participants)
    : count_(participants), records_(std::make_unique<Record[]>(participants)) {}

EpochDomain::~EpochDomain() { drain(); }

void EpochDomain::enter(std::size_t tid) {
  Record& rec = records_[tid];
  if (rec.nesting++ > 0) return;
  std::uint64_t e = global_.load(std::memory_order_acquire);
  for (;;) {
    rec.announced.store(e, std::memory_order_seq_cst);
    std::atomic_thread_fence(std::memory_order_seq_cst);
    const std::uint64_t now = global_.load(std::memory_order_acquire);
    if (now == e) break;
    e = now;
  }
}

void EpochDomain::exit(std::size_t tid) {
  Record& rec = records_[tid];
  assert(rec.nesting > 0);
  if (--rec.nesting > 0) return;
  rec.announced.store(kInactive, std::memory_order_release);
}

void EpochDomain::free_bag(std::vector<Retired>& bag) {
  for (const Retired& r : bag) r.deleter(r.ptr);
  bag.clear();
}

void EpochDomain::collect(Record& rec, std::uint64_t global) {
  for (std::size_t i = 0; i < rec.bags.size(); ++i) {
    if (!rec.bags[i].empty() && rec.bag_epoch[i] + 2 <= global) free_bag(rec.bags[i]);
  }
}

void EpochDomain::retire(std::size_t tid, void* p, void (*deleter)(void*)) {
  Record& rec = records_[tid];
  const std::uint64_t e = global_.load(std::memory_order_acquire);
  const std::size_t idx = e % 3;
  if (rec.bag_epoch[idx] != e) {
    // The bag holds objects from epoch e - 3 or earlier.
    free_bag(rec.bags[idx]);
    rec.bag_epoch[idx] = e;
  }
  rec.bags[idx].push_back(Retired{p, deleter});
  if (++rec.retires % kAdvanceEvery == 0) try_advance(tid);
}

void EpochDomain::try_advance(std::size_t tid) {
  std::uint64_t e = global_.load(std::memory_order_seq_cst);
  bool all_current = true;
  for (std::size_t i = 0; i < count_; ++i) {
    const std::uint64_t a = records_[i].announced.load(std::memory_order_seq_cst);
    if (a != kInactive && a != e) {
      all_current = false;
      break;
    }
  }
  if (all_current && global_.compare_exchange_strong(e, e + 1, std::memory_order_acq_rel)) {
    e = e + 1;
  } else {
    e = global_.load(std::memory_order_acquire);
  }
  collect(records_[tid], e);
}

std::size_t EpochDomain::pending() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < count_; ++i) {
    for (const auto& bag : records_[i].bags) n += bag.size();
  }
  return n;
}

void EpochDomain::drain() {
  for (std::size_t i = 0; i < count_; ++i) {
    for (auto& bag : records_[i].bags) free_bag(bag);
  }
}

}  // namespace relaxpq
