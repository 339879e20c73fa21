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

#ifndef RELAXPQ_BENCH_STATS_HPP_
#define RELAXPQ_BENCH_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>

namespace relaxpq::bench {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 for one sample
  std::optional<double> ci95;  // half-width of the 95% t-interval; none for one sample
};

// Requires at least one sample; throws std::invalid_argument otherwise.
Summary aggregate(std::span<const double> samples);

// Two-sided 97.5% quantile of Student's t with `df` degrees of freedom.
double t_quantile_975(std::size_t df);

}  // namespace relaxpq::bench

#endif  // RELAXPQ_BENCH_STATS_HPP_
