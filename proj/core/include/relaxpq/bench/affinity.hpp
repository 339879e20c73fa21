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

#ifndef RELAXPQ_BENCH_AFFINITY_HPP_
#define RELAXPQ_BENCH_AFFINITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace relaxpq::bench {

// CPUs this process may run on, ascending.
std::vector<int> allowed_cpus();

// True when PQBENCH_NO_PIN=1 is set in the environment.
bool pinning_disabled_by_env();

// Pins the calling thread. Returns false if the platform refused.
bool pin_current_thread(int cpu);

// Worker i runs on cpus[i] when `cpus` is non-empty.
struct PinPlan {
  std::vector<int> cpus;
  std::optional<std::string> warning;
};

// Assigns distinct CPUs in ascending order, or explains why threads will
// run unpinned.
PinPlan plan_pinning(std::size_t threads, bool requested);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_AFFINITY_HPP_
