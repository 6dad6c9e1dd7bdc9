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

#ifndef SMSP_INVARIANTS_HPP_
#define SMSP_INVARIANTS_HPP_

#include <string>
#include <vector>

#include "smsp/instance.hpp"

namespace smsp {

// One checked property. `anchor` states the inequality or identity the
// check verifies, `measured` and `threshold` give the decisive
// comparison (interpretation depends on the check; see `detail`).
struct InvariantResult {
  std::string name;
  std::string anchor;
  std::string status;  // "pass", "fail" or "skipped"
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;

  bool passed() const { return status == "pass"; }
  bool failed() const { return status == "fail"; }
};

struct InvariantConfig {
  // One of: matroid, function, reduction, coupling, partition, dynkin,
  // wrapper, bounds, endtoend, all.
  std::string suite = "all";
  long long trials = 20000;   // Monte Carlo sample size per statistic
  long long seeds = 1000;     // coupling tuples / randomized repetitions
  std::uint64_t seed = 20260815;
  int threads = 0;            // 0 means hardware concurrency
  // Highest n for which the alpha(n) <= e scan runs.
  long long alpha_scan_limit = 1000000;
};

// Runs the selected suite against the built-in fixture instances.
std::vector<InvariantResult> check_invariants(const InvariantConfig& cfg);

// Same, but the function and reduction suites run against the supplied
// instances instead of the fixtures. A failing oracle check marks the
// checks that depend on it as skipped.
std::vector<InvariantResult> check_invariants(
    const InvariantConfig& cfg, const std::vector<Instance>& instances);

bool all_passed(const std::vector<InvariantResult>& results);

}  // namespace smsp

#endif  // SMSP_INVARIANTS_HPP_
