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

#ifndef SMSP_HARNESS_HPP_
#define SMSP_HARNESS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smsp/instance.hpp"
#include "smsp/reduction.hpp"
#include "smsp/stats.hpp"

namespace smsp {

// Resolves a subroutine key ("dynkin", "dynkin-capped", "partition",
// "greedy-online") to a factory bound to the given instance. The
// partition key requires the instance matroid to be a partition matroid.
LinearFactory make_linear(const std::string& key, const Instance& instance);

enum class AlgorithmKey {
  kSmspOnline,
  kSmspSimulated,
  kMsmspOnline,
  kMsmspSimulated,
  kLinearOnly,  // run the subroutine alone on singleton marginals
};

std::optional<AlgorithmKey> algorithm_from_key(const std::string& key);
std::string algorithm_key_name(AlgorithmKey a);

struct ExperimentConfig {
  AlgorithmKey algorithm = AlgorithmKey::kSmspSimulated;
  std::string linear = "greedy-online";
  // Overrides `linear` when set; lets analysis code plug in subroutines
  // that have no public key.
  LinearFactory custom_linear;
  Variant variant = Variant::kNonmonotone;
  std::optional<double> p;  // empty means choose_p(alpha, variant, q)
  double alpha = 1.0;
  std::optional<double> q;
  long long trials = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 means hardware concurrency
  // Also log the exact-convolution statistics fw_greedy and
  // fw_candidates. Exponential in |N|; analysis runs only.
  bool with_convolution = false;
  // Known-in-advance elements for the linear-only mode; they reach the
  // subroutine as weight-0 arrivals and are stripped from the output.
  ElementSet partial_known;
};

// Scalar summary of one trial, in trial order.
struct TrialRow {
  long long x = 0;
  int learn_size = 0;
  int greedy_size = 0;
  int candidate_size = 0;
  int zero_size = 0;
  int output_size = 0;
  double f_greedy = 0.0;
  double w_greedy = 0.0;
  double w_candidates = 0.0;
  double f_output = 0.0;
  double w_output = 0.0;
  double optw_candidates = 0.0;  // w of a maximum-weight independent
                                 // subset of the candidates
  double fw_greedy = 0.0;        // only when with_convolution
  double fw_candidates = 0.0;    // only when with_convolution
  double fw_output = 0.0;        // only when with_convolution
};

struct TrialAggregate {
  long long trials = 0;
  std::map<std::string, StatSummary> stats;
  // Per element: fraction of trials whose output contains it.
  std::vector<double> accept_freq;
  std::vector<TrialRow> rows;  // indexed by trial
};

// Runs cfg.trials independent trials. Trial i derives its tape from
// (seed, i), so results are reproducible for any thread count and any
// contiguous re-run of a subset of trials.
TrialAggregate run_trials(const ExperimentConfig& cfg,
                          const Instance& instance);

double resolve_p(const ExperimentConfig& cfg);

}  // namespace smsp

#endif  // SMSP_HARNESS_HPP_
