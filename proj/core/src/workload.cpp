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

#include "relaxpq/workload.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "relaxpq/rng.hpp"

namespace relaxpq {

namespace {

constexpr std::array<std::pair<std::string_view, KeyDistKind>, 5> kKeyNames{{
    {"uniform32", KeyDistKind::kUniform32},
    {"uniform16", KeyDistKind::kUniform16},
    {"uniform8", KeyDistKind::kUniform8},
    {"ascending", KeyDistKind::kAscending},
    {"descending", KeyDistKind::kDescending},
}};

constexpr std::array<std::pair<std::string_view, WorkloadKind>, 3> kWorkloadNames{{
    {"uniform", WorkloadKind::kUniform},
    {"split", WorkloadKind::kSplit},
    {"alternating", WorkloadKind::kAlternating},
}};

constexpr std::array<std::pair<std::string_view, KeyDependency>, 3> kDependencyNames{{
    {"none", KeyDependency::kNone},
    {"ascending", KeyDependency::kAscending},
    {"descending", KeyDependency::kDescending},
}};

template <class Table, class E>
std::string_view name_of(const Table& table, E value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <class E, class Table>
std::optional<E> value_of(const Table& table, std::string_view name) {
  for (const auto& [n, v] : table) {
    if (n == name) return v;
  }
  return std::nullopt;
}

}  // namespace

unsigned base_bits(KeyDistKind kind) {
  switch (kind) {
    case KeyDistKind::kUniform32: return 32;
    case KeyDistKind::kUniform16: return 16;
    case KeyDistKind::kUniform8: return 8;
    case KeyDistKind::kAscending:
    case KeyDistKind::kDescending: return kDriftBits;
  }
  return 32;
}

std::string_view to_string(KeyDistKind kind) { return name_of(kKeyNames, kind); }
std::string_view to_string(WorkloadKind kind) { return name_of(kWorkloadNames, kind); }
std::string_view to_string(KeyDependency dep) { return name_of(kDependencyNames, dep); }

std::optional<KeyDistKind> parse_key_dist(std::string_view name) {
  return value_of<KeyDistKind>(kKeyNames, name);
}
std::optional<WorkloadKind> parse_workload(std::string_view name) {
  return value_of<WorkloadKind>(kWorkloadNames, name);
}
std::optional<KeyDependency> parse_key_dependency(std::string_view name) {
  return value_of<KeyDependency>(kDependencyNames, name);
}

KeyGenerator::KeyGenerator(KeyDist dist, std::uint64_t seed, std::uint32_t thread,
                           std::uint32_t threads)
    : dist_(dist),
      stream_(derive_seed(seed, thread, StreamPurpose::kKeys)),
      thread_(thread),
      threads_(threads == 0 ? 1 : threads),
      last_deleted_(dist.dependency == KeyDependency::kDescending ? kDescendingOrigin : 0) {}

Key KeyGenerator::draw(std::uint64_t opnum) const {
  const unsigned bits = base_bits(dist_.kind);
  const Key u = SplitMix64::at(stream_, opnum) >> (64 - bits);
  if (dist_.dependency != KeyDependency::kNone) {
    if (dist_.dependency == KeyDependency::kAscending) return last_deleted_ + u;
    return last_deleted_ > u ? last_deleted_ - u : 0;
  }
  switch (dist_.kind) {
    case KeyDistKind::kAscending: return opnum + u;
    case KeyDistKind::kDescending: {
      const Key drop = opnum + u;
      return drop >= kDescendingOrigin ? 0 : kDescendingOrigin - drop;
    }
    default: return u;
  }
}

Key KeyGenerator::next_key(std::uint64_t opnum) {
  Key key = draw(opnum);
  if (dist_.unique) {
    constexpr Key kLow = (Key{1} << 32) - 1;
    const Key tag = (inserted_ * threads_ + thread_) & kLow;
    key = (std::min(key, kLow) << 32) | tag;
  }
  ++inserted_;
  return key;
}

OpGenerator::OpGenerator(Workload workload, std::uint64_t seed, std::uint32_t thread,
                         std::uint32_t threads)
    : workload_(workload),
      stream_(derive_seed(seed, thread, StreamPurpose::kOps)),
      thread_(thread),
      threads_(threads == 0 ? 1 : threads) {}

OpKind OpGenerator::next_op(std::uint64_t opnum) const {
  switch (workload_.kind) {
    case WorkloadKind::kSplit:
      return inserts() ? OpKind::kInsert : OpKind::kDelete;
    case WorkloadKind::kAlternating:
      return opnum % 2 == 0 ? OpKind::kInsert : OpKind::kDelete;
    case WorkloadKind::kUniform: {
      const double u = static_cast<double>(SplitMix64::at(stream_, opnum) >> 11) * 0x1.0p-53;
      return u < workload_.insert_probability ? OpKind::kInsert : OpKind::kDelete;
    }
  }
  return OpKind::kInsert;
}

bool OpGenerator::inserts() const {
  if (workload_.kind != WorkloadKind::kSplit) return true;
  return thread_ < inserter_count(workload_.kind, threads_);
}

std::uint32_t inserter_count(WorkloadKind kind, std::uint32_t threads) {
  if (kind != WorkloadKind::kSplit) return threads;
  return (threads + 1) / 2;
}

std::uint64_t prefill_share(std::uint64_t total, WorkloadKind kind, std::uint32_t thread,
                            std::uint32_t threads) {
  const std::uint32_t m = inserter_count(kind, threads);
  if (m == 0 || thread >= m) return 0;
  return total / m + (thread < total % m ? 1 : 0);
}

}  // namespace relaxpq
