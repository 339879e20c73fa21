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

#ifndef RELAXPQ_BENCH_OPLOG_HPP_
#define RELAXPQ_BENCH_OPLOG_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "relaxpq/item.hpp"
#include "relaxpq/workload.hpp"

namespace relaxpq::bench {

// One insert or successful delete, stamped with a global logical clock.
struct OpRecord {
  Key key = 0;
  std::uint64_t seq = 0;
  std::uint64_t timestamp = 0;
  std::uint32_t thread = 0;
  OpKind kind = OpKind::kInsert;

  friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

class LogOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptLogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Append-only per-thread record buffer with a hard capacity. Storage grows
// in fixed chunks so appends never move existing records.
class OpLog {
 public:
  explicit OpLog(std::size_t capacity) : capacity_(capacity) {}

  // False once the capacity is exhausted; the record is dropped.
  bool push(const OpRecord& r) {
    if (size_ == capacity_) return false;
    if (size_ % kChunk == 0) chunks_.push_back(std::make_unique<OpRecord[]>(kChunk));
    chunks_.back()[size_ % kChunk] = r;
    ++size_;
    return true;
  }

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  const OpRecord& operator[](std::size_t i) const { return chunks_[i / kChunk][i % kChunk]; }

  // Appends all records to `out` and releases the storage.
  void drain_into(std::vector<OpRecord>& out);

 private:
  static constexpr std::size_t kChunk = std::size_t{1} << 16;

  std::size_t capacity_;
  std::size_t size_ = 0;
  std::vector<std::unique_ptr<OpRecord[]>> chunks_;
};

// Concatenates per-thread logs into one sequence ordered by
// (timestamp, thread id).
std::vector<OpRecord> merge_logs(std::span<OpLog> logs);

// Sorts in place by (timestamp, thread id).
void linearize(std::vector<OpRecord>& records);

// CSV with header `kind,key,seq,timestamp,thread`; kind is I or D.
void write_log_csv(std::ostream& out, std::span<const OpRecord> records);
// Throws CorruptLogError on malformed input.
std::vector<OpRecord> read_log_csv(std::istream& in);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_OPLOG_HPP_
