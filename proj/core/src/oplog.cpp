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

#include "relaxpq/bench/oplog.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace relaxpq::bench {

void OpLog::drain_into(std::vector<OpRecord>& out) {
  std::size_t left = size_;
  for (auto& chunk : chunks_) {
    const std::size_t n = std::min(left, kChunk);
    out.insert(out.end(), chunk.get(), chunk.get() + n);
    left -= n;
    chunk.reset();
  }
  chunks_.clear();
  size_ = 0;
}

void linearize(std::vector<OpRecord>& records) {
  std::sort(records.begin(), records.end(), [](const OpRecord& a, const OpRecord& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.thread < b.thread;
  });
}

std::vector<OpRecord> merge_logs(std::span<OpLog> logs) {
  std::size_t total = 0;
  for (const OpLog& log : logs) total += log.size();
  std::vector<OpRecord> out;
  out.reserve(total);
  for (OpLog& log : logs) log.drain_into(out);
  linearize(out);
  return out;
}

void write_log_csv(std::ostream& out, std::span<const OpRecord> records) {
  out << "kind,key,seq,timestamp,thread\n";
  for (const OpRecord& r : records) {
    out << (r.kind == OpKind::kInsert ? 'I' : 'D') << ',' << r.key << ',' << r.seq << ','
        << r.timestamp << ',' << r.thread << '\n';
  }
}

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CorruptLogError("line " + std::to_string(line) + ": bad number '" +
                          std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<OpRecord> read_log_csv(std::istream& in) {
  std::vector<OpRecord> out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != "kind,key,seq,timestamp,thread") {
    throw CorruptLogError("missing header 'kind,key,seq,timestamp,thread'");
  }
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view fields[5];
    for (int f = 0; f < 5; ++f) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (f == 4)) {
        throw CorruptLogError("line " + std::to_string(lineno) + ": expected 5 fields");
      }
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    OpRecord r;
    if (fields[0] == "I") {
      r.kind = OpKind::kInsert;
    } else if (fields[0] == "D") {
      r.kind = OpKind::kDelete;
    } else {
      throw CorruptLogError("line " + std::to_string(lineno) + ": kind must be I or D");
    }
    r.key = parse_field<Key>(fields[1], lineno);
    r.seq = parse_field<std::uint64_t>(fields[2], lineno);
    r.timestamp = parse_field<std::uint64_t>(fields[3], lineno);
    r.thread = parse_field<std::uint32_t>(fields[4], lineno);
    out.push_back(r);
  }
  return out;
}

}  // namespace relaxpq::bench
