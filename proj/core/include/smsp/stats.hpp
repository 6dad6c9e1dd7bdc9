// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SMSP_STATS_HPP_
#define SMSP_STATS_HPP_

#include <cstdint>
#include <span>
#include <string>

namespace smsp {

struct StatSummary {
  long long count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double se = 0.0;      // stddev / sqrt(count)
};

// Sequential reduction in input order, so results are independent of
// how trials were scheduled across threads.
StatSummary summarize(std::span<const double> values);

// Standard error of an empirical frequency k/t.
double frequency_se(long long k, long long t);

double chi_square_stat(std::span<const long long> observed,
                       double expected_per_cell);

// Critical value at significance 0.001 (the 0.999 quantile).
// Exact frozen values for the degrees of freedom used by the uniformity
// tests; Wilson-Hilferty approximation otherwise.
double chi_square_critical_001(int df);

// Serialize with 12 significant digits (replayable output convention).
std::string format_sig12(double x);

}  // namespace smsp

#endif  // SMSP_STATS_HPP_
