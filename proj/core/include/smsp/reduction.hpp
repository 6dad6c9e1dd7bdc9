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

#ifndef SMSP_REDUCTION_HPP_
#define SMSP_REDUCTION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smsp/instance.hpp"
#include "smsp/online.hpp"
#include "smsp/rng.hpp"

namespace smsp {

enum class Variant { kNonmonotone, kMonotone };

struct ReductionConfig {
  Variant variant = Variant::kNonmonotone;
  double p = 0.0;  // candidate acceptance probability, in (0, 1)
};

// Complete record of one trial of the reduction.
struct TrialLog {
  long long x = 0;           // learning-prefix length
  ElementSet learn;          // L: elements treated as observed
  ElementSet greedy_set;     // M: greedy solution on L
  ElementSet candidates;     // N: elements offered to the subroutine
                             //    with positive surrogate weight
  ElementSet zero_candidates;  // N0: offered with weight 0
  std::vector<double> w;     // surrogate weights (dense over the ground set;
                             //    greedy-set entries carry insertion gains)
  ElementSet subroutine_out; // Q: subroutine selection
  ElementSet output;         // Q restricted to N
  double f_greedy = 0.0;     // f(M)
  double w_greedy = 0.0;     // w(M)
  double w_candidates = 0.0; // w(N)
  double f_output = 0.0;     // f(output)
};

// Online nonmonotone reduction: observe a Binomial(n, 1/2) prefix L,
// run greedy on L to get M, then for each later arrival that greedy
// would accept into M, keep it as a candidate with probability p at
// surrogate weight equal to its insertion gain. Every post-learning
// element is forwarded to the linear subroutine (candidates at their
// surrogate weight, the rest at 0) through the known-set adapter, and
// the result is the subroutine's selection restricted to candidates.
TrialLog smsp_online(const ReductionConfig& cfg, const Instance& instance,
                     std::span<const Element> arrival,
                     const LinearFactory& linear, const RandomTape& tape);

// Offline-simulable variant with identical output distribution:
// processes the whole ground set in greedy order, routing each element
// to M / candidates / zero-weight candidates by coin flips, then feeds
// the candidates to the subroutine in uniform random order.
TrialLog smsp_simulated(const ReductionConfig& cfg, const Instance& instance,
                        const LinearFactory& linear, const RandomTape& tape);

// Monotone counterparts: the learning prefix is Binomial(n, p) and
// greedy-accepted later elements become candidates deterministically.
TrialLog msmsp_online(const ReductionConfig& cfg, const Instance& instance,
                      std::span<const Element> arrival,
                      const LinearFactory& linear, const RandomTape& tape);
TrialLog msmsp_simulated(const ReductionConfig& cfg, const Instance& instance,
                         const LinearFactory& linear, const RandomTape& tape);

// Derandomized coupling of the online/simulated pair: both runs read
// membership from the shared sets L (learning) and F (candidate coin),
// deliver real elements in the shared order pi, and drive the linear
// subroutine from the same seed, so their logs must agree exactly.
struct CoupledResult {
  TrialLog online;
  TrialLog simulated;
  bool identical = false;
  std::string mismatch;  // first differing field, empty when identical
};
CoupledResult coupled_pair(const ElementSet& learn, const ElementSet& flips,
                           std::span<const Element> pi, double p,
                           const Instance& instance,
                           const LinearFactory& linear,
                           std::uint64_t linear_seed);

// Candidate probability that optimizes the guarantee for an
// alpha-competitive subroutine; q is the per-element selection cap when
// the subroutine has one, and opt_filter selects the stronger monotone
// tuning available for optimum-filtering subroutines.
double choose_p(double alpha, Variant variant,
                std::optional<double> q = std::nullopt,
                bool opt_filter = false);

// Composite approximation-ratio bound of the full pipeline:
//   nonmonotone: 24 k alpha (3 alpha + 1), capped: 24 alpha (3 q alpha + 1)
//   monotone:     8 k alpha (alpha + 1),   capped:  8 alpha (q alpha + 1)
//   opt-filter monotone: 16 alpha.
double ratio_bound(double alpha, Variant variant, int k = 1,
                   std::optional<double> q = std::nullopt,
                   bool opt_filter = false);

// Guarantee per trial value of the laminar pipeline with first-come
// greedy acceptance as the subroutine, as a function of p; requires
// beta = 2e(1-p) (monotone) resp. 2e(1 - 1/(1+p)) (nonmonotone) < 1.
// The reported ratio is the reciprocal.
double laminar_ratio(double p, Variant variant);

}  // namespace smsp

#endif  // SMSP_REDUCTION_HPP_
