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

#include "smsp/stats.hpp"

#include <cmath>
#include <cstdio>

namespace smsp {

StatSummary summarize(std::span<const double> values) {
  StatSummary s;
  s.count = static_cast<long long>(values.size());
  if (s.count == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.se = s.stddev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

double frequency_se(long long k, long long t) {
  if (t <= 1) return 0.0;
  double p = static_cast<double>(k) / static_cast<double>(t);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(t));
}

double chi_square_stat(std::span<const long long> observed,
                       double expected_per_cell) {
  double stat = 0.0;
  for (long long o : observed) {
    double d = static_cast<double>(o) - expected_per_cell;
    stat += d * d / expected_per_cell;
  }
  return stat;
}

double chi_square_critical_001(int df) {
  // Frozen 0.999 quantiles for the permutation-uniformity tests
  // (independently computed in advance).
  switch (df) {
    case 1: return 10.827566170663;
    case 5: return 20.515005652433;
    case 23: return 49.728232466431;
    case 119: return 172.417681602179;
    default: break;
  }
  // Wilson-Hilferty: df * (1 - 2/(9 df) + z * sqrt(2/(9 df)))^3 with
  // z the 0.999 standard normal quantile.
  const double z = 3.090232306167814;
  double c = 2.0 / (9.0 * df);
  double t = 1.0 - c + z * std::sqrt(c);
  return df * t * t * t;
}

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

}  // namespace smsp
