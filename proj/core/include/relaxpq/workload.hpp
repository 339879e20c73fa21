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

#ifndef RELAXPQ_WORKLOAD_HPP_
#define RELAXPQ_WORKLOAD_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "relaxpq/item.hpp"

namespace relaxpq {

enum class OpKind : std::uint8_t { kInsert = 0, kDelete = 1 };

enum class KeyDistKind { kUniform32, kUniform16, kUniform8, kAscending, kDescending };

// Experimental: derive the next key from the last key this thread deleted
// instead of from the operation number.
enum class KeyDependency { kNone, kAscending, kDescending };

enum class WorkloadKind { kUniform, kSplit, kAlternating };

// Origin of the descending distribution.
inline constexpr Key kDescendingOrigin = Key{1} << 32;
// Base range of the drifting (ascending/descending) distributions.
inline constexpr unsigned kDriftBits = 10;

struct KeyDist {
  KeyDistKind kind = KeyDistKind::kUniform32;
  // Makes keys globally unique by moving the drawn key into the high 32 bits
  // and a (counter, thread) tag into the low 32. Order between different
  // drawn keys is preserved.
  bool unique = false;
  KeyDependency dependency = KeyDependency::kNone;
};

struct Workload {
  WorkloadKind kind = WorkloadKind::kUniform;
  double insert_probability = 0.5;  // uniform kind only
};

// Width in bits of the random component of a distribution.
unsigned base_bits(KeyDistKind kind);

std::string_view to_string(KeyDistKind kind);
std::string_view to_string(WorkloadKind kind);
std::string_view to_string(KeyDependency dep);
std::optional<KeyDistKind> parse_key_dist(std::string_view name);
std::optional<WorkloadKind> parse_workload(std::string_view name);
std::optional<KeyDependency> parse_key_dependency(std::string_view name);

// Per-thread key stream. Without uniqueness or dependency the key is a pure
// function of (seed, thread, opnum).
class KeyGenerator {
 public:
  KeyGenerator(KeyDist dist, std::uint64_t seed, std::uint32_t thread, std::uint32_t threads);

  // The distribution's value at operation `opnum`.
  Key draw(std::uint64_t opnum) const;

  // The key to insert at operation `opnum`, after uniqueness tagging.
  Key next_key(std::uint64_t opnum);

  void on_deleted(Key key) { last_deleted_ = key; }

 private:
  KeyDist dist_;
  std::uint64_t stream_;
  std::uint32_t thread_;
  std::uint32_t threads_;
  std::uint64_t inserted_ = 0;
  Key last_deleted_;
};

class OpGenerator {
 public:
  OpGenerator(Workload workload, std::uint64_t seed, std::uint32_t thread, std::uint32_t threads);

  OpKind next_op(std::uint64_t opnum) const;

  // Whether this thread ever inserts (and therefore takes part in prefill).
  bool inserts() const;

 private:
  Workload workload_;
  std::uint64_t stream_;
  std::uint32_t thread_;
  std::uint32_t threads_;
};

// Number of threads that insert under `kind`: ceil(P/2) for split.
std::uint32_t inserter_count(WorkloadKind kind, std::uint32_t threads);

// Items thread `thread` contributes to a prefill of `total` items.
std::uint64_t prefill_share(std::uint64_t total, WorkloadKind kind, std::uint32_t thread,
                            std::uint32_t threads);

}  // namespace relaxpq

#endif  // RELAXPQ_WORKLOAD_HPP_
