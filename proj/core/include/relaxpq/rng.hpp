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

#ifndef RELAXPQ_RNG_HPP_
#define RELAXPQ_RNG_HPP_

#include <cstdint>

namespace relaxpq {

// SplitMix64 (Steele, Lea, Flood; constants from Vigna's reference code).
//
// The generator is counter based: output i of a stream seeded with s is
// mix(s + (i + 1) * kGamma). That makes "value at position i" a pure
// function, which the key generators rely on, and lets independent streams
// be carved out by hashing (seed, stream id) into a fresh starting state.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Output `index` of the stream that starts at `seed`, without stepping.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGamma);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  constexpr std::uint64_t operator()() { return next(); }

  // Unbiased integer in [0, bound) using Lemire's multiply-and-reject method.
  // bound == 0 yields 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // A new generator whose stream is independent of this one's.
  constexpr SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(stream_seed(state_, stream));
  }

  constexpr std::uint64_t state() const { return state_; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

 private:
  static constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
    return mix(base ^ mix(stream + kGamma));
  }

  friend constexpr std::uint64_t derive_seed(std::uint64_t, std::uint64_t, std::uint64_t);

  std::uint64_t state_;
};

// Purposes for per-thread sub-streams, so that e.g. key generation and the
// queue's internal choices never share a stream.
enum class StreamPurpose : std::uint64_t {
  kKeys = 1,
  kOps = 2,
  kQueue = 3,
  kRepetition = 4,
};

// Seed for stream (thread, purpose) of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t thread,
                                    std::uint64_t purpose) {
  return SplitMix64::stream_seed(SplitMix64::stream_seed(seed, purpose), thread);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t thread,
                                    StreamPurpose purpose) {
  return derive_seed(seed, thread, static_cast<std::uint64_t>(purpose));
}

}  // namespace relaxpq

#endif  // RELAXPQ_RNG_HPP_
