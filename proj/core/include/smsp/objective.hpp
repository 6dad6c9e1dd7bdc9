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

#ifndef SMSP_OBJECTIVE_HPP_
#define SMSP_OBJECTIVE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smsp/element_set.hpp"
#include "smsp/matroid.hpp"

namespace smsp {

struct LinearObjectiveSpec {
  std::vector<double> weights;  // element -> non-negative weight
};

struct CoverageObjectiveSpec {
  std::vector<std::vector<int>> covers;  // element -> covered items
  std::vector<double> item_weights;      // empty means unit weights
};

// f(S) = max_{e in S} w(e), f(empty) = 0.
struct MaxWeightObjectiveSpec {
  std::vector<double> weights;
};

// f(S) = max weight of an independent subset of S in the inner matroid.
struct WeightedRankObjectiveSpec {
  MatroidSpec inner;
  std::vector<double> weights;
};

using ObjectiveSpec =
    std::variant<LinearObjectiveSpec, CoverageObjectiveSpec,
                 MaxWeightObjectiveSpec, WeightedRankObjectiveSpec>;

// Set-function value oracle. All built-in kinds are non-negative,
// submodular, and monotone; a constant shift c >= 0 gives f+c with
// f(empty) = c. Queries are const; the call counter uses relaxed
// atomic increments so concurrent trials may share one oracle.
class Objective {
 public:
  Objective(const ObjectiveSpec& spec, int n, double shift = 0.0);

  // Analysis-only escape hatch for synthetic set functions.
  static Objective custom(int n, std::function<double(const ElementSet&)> f,
                          bool monotone, double shift = 0.0);

  double value(const ElementSet& s) const;
  // f(S + u) - f(S); zero when u already belongs to S.
  double marginal(Element u, const ElementSet& s) const;

  int n() const { return n_; }
  double shift() const { return shift_; }
  bool monotone_declared() const { return monotone_; }
  const std::optional<ObjectiveSpec>& spec() const { return spec_; }

  std::uint64_t call_count() const {
    return calls_->load(std::memory_order_relaxed);
  }
  void reset_call_count() const {
    calls_->store(0, std::memory_order_relaxed);
  }

 private:
  Objective() = default;

  int n_ = 0;
  double shift_ = 0.0;
  bool monotone_ = true;
  std::optional<ObjectiveSpec> spec_;
  std::function<double(const ElementSet&)> eval_;  // excludes shift
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

// Convolution with a modular weight vector:
//   f_w(S) = min over A subset of S of f(A) + w(S \ A),
// evaluated by exhaustive enumeration. |S| must be at most 20.
// Analysis/test path only; never called while executing a trial's
// online decisions.
double convolve_fw(const Objective& f, const std::vector<double>& w,
                   const ElementSet& s);

struct SubmodularityReport {
  bool submodular = false;
  bool monotone = false;
  bool non_negative = false;
  double value_at_empty = 0.0;
  // First violating pair for the failed property, if any.
  std::optional<ElementSet> witness_a;
  std::optional<ElementSet> witness_b;
  std::string violation;  // "submodular", "monotone", "non-negative" or ""
  bool ok() const { return submodular && non_negative; }
};

// Exhaustive check of f(A)+f(B) >= f(A u B)+f(A n B) over all pairs,
// plus monotonicity and non-negativity; n must be at most 16.
SubmodularityReport check_submodular(
    int n, const std::function<double(const ElementSet&)>& f);
SubmodularityReport check_submodular(const Objective& f);

struct GreedyTrace {
  ElementSet result;
  std::vector<Element> order;  // insertion order
  std::vector<double> gain;    // marginal at insertion, aligned with order
};

// Maximum-marginal greedy restricted to the matroid: repeatedly pick the
// remaining element with the largest marginal (ties to the smallest id),
// discard it if adding would break independence or the marginal is
// negative, otherwise add it.
GreedyTrace greedy(const Objective& f, const Matroid& m,
                   const ElementSet& universe);

struct OptResult {
  ElementSet set;
  double value = 0.0;
};

// Exhaustive maximum of f over independent subsets of `universe`;
// |universe| must be at most 20. Ties resolve to the set first reached
// in mask order, so results are deterministic.
OptResult offline_opt(const Objective& f, const Matroid& m,
                      const ElementSet& universe);

// Exact maximum-weight independent subset under modular weights
// (greedy by descending weight, ids break ties).
OptResult max_weight_independent(const std::vector<double>& w,
                                 const Matroid& m, const ElementSet& universe);

}  // namespace smsp

#endif  // SMSP_OBJECTIVE_HPP_
