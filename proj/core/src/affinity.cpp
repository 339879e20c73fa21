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

#include "relaxpq/bench/affinity.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

namespace relaxpq::bench {

std::vector<int> allowed_cpus() {
  std::vector<int> cpus;
#if defined(__linux__)
  cpu_set_t set;
  CPU_ZERO(&set);
  if (sched_getaffinity(0, sizeof(set), &set) == 0) {
    for (int c = 0; c < CPU_SETSIZE; ++c) {
      if (CPU_ISSET(c, &set)) cpus.push_back(c);
    }
  }
#endif
  return cpus;
}

bool pinning_disabled_by_env() {
  const char* v = std::getenv("PQBENCH_NO_PIN");
  return v != nullptr && std::strcmp(v, "1") == 0;
}

bool pin_current_thread(int cpu) {
#if defined(__linux__)
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return pthread_setaffinity_np(pthread_self(), sizeof(set), &set) == 0;
#else
  (void)cpu;
  return false;
#endif
}

PinPlan plan_pinning(std::size_t threads, bool requested) {
  PinPlan plan;
  if (!requested || pinning_disabled_by_env()) return plan;
  auto cpus = allowed_cpus();
  if (cpus.empty()) {
    plan.warning = "thread pinning unsupported on this platform; running unpinned";
    return plan;
  }
  if (cpus.size() < threads) {
    plan.warning = std::to_string(threads) + " threads but only " + std::to_string(cpus.size()) +
                   " usable cores; running unpinned";
    return plan;
  }
  cpus.resize(threads);
  plan.cpus = std::move(cpus);
  return plan;
}

}  // namespace relaxpq::bench
