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

#ifndef RELAXPQ_PADDED_HPP_
#define RELAXPQ_PADDED_HPP_

#include <cstddef>

namespace relaxpq {

inline constexpr std::size_t kCacheLine = 64;

// Keeps per-thread state on its own cache line.
template <class T>
struct alignas(kCacheLine) Padded {
  T value{};
};

}  // namespace relaxpq

#endif  // RELAXPQ_PADDED_HPP_
