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

#ifndef SMSP_LINEAR_MSP_HPP_
#define SMSP_LINEAR_MSP_HPP_

#include <memory>
#include <vector>

#include "smsp/online.hpp"

namespace smsp {

// Success probability of the classical threshold rule on n elements
// when the first r-1 are observed and the next record is taken:
//   r = 1: 1/n;  r >= 2: ((r-1)/n) * sum_{j=r..n} 1/(j-1).
double dynkin_success_probability(int n, int r);

struct DynkinChoice {
  int r = 1;
  double p = 0.0;  // success probability at r
};

// Maximizing observation cutoff (smallest r on ties).
DynkinChoice dynkin_best(int n);

// Single-selection threshold rule. With `capped`, a tentative selection
// is kept only with probability 1/(e * p(n)), so no element is selected
// with probability above 1/e while the best element is still selected
// with probability exactly 1/e.
std::unique_ptr<OnlineAlgorithm> make_dynkin(const LinearContext& ctx,
                                             bool capped);

// alpha(n) = ( t/n - 1/e + sum_{j=t..n-1} 1/(e j) )^{-1}, t = ceil(n/e).
// Competitive ratio of the class-marking rule below; at most e for all n.
double alpha_partition(long long n);

// Unitary-partition selection: observe a random prefix of length X
// (t-1 with probability t - n/e, else t), then accept the first arrival
// of a class that beats the class's observed maximum, or a first-of-class
// arrival with probability X / (number of prior arrivals).
// Every maximum-weight class representative is accepted with probability
// exactly 1/alpha(n) and no element with higher probability.
std::unique_ptr<OnlineAlgorithm> make_partition_msp(
    const LinearContext& ctx, std::vector<int> class_of);

// First-come acceptance of positive-weight elements while the selection
// stays independent.
std::unique_ptr<OnlineAlgorithm> make_greedy_online(const LinearContext& ctx);

// Adapter for streams where the elements of `known` never arrive: feeds
// the inner algorithm a uniformly random interleaving of the real
// arrivals with the known elements at weight 0, so the inner algorithm
// sees a uniformly random permutation of the full ground set whenever
// the real arrivals are uniformly ordered. finish() strips `known`.
class PartialMspWrapper : public OnlineAlgorithm {
 public:
  PartialMspWrapper(std::unique_ptr<OnlineAlgorithm> inner, ElementSet known,
                    int n_total, std::uint64_t seed);

  bool on_arrival(Element u, double weight) override;
  ElementSet finish() override;

  // Order in which elements were handed to the inner algorithm.
  const std::vector<Element>& delivered() const { return delivered_; }

 private:
  void feed_dummy();

  std::unique_ptr<OnlineAlgorithm> inner_;
  std::vector<Element> pool_;  // known elements not yet delivered
  ElementSet known_;
  int real_left_ = 0;
  Rng rng_;
  std::vector<Element> delivered_;
};

std::unique_ptr<OnlineAlgorithm> partial_msp_wrap(
    std::unique_ptr<OnlineAlgorithm> inner, const ElementSet& known,
    int n_total, std::uint64_t seed);

}  // namespace smsp

#endif  // SMSP_LINEAR_MSP_HPP_
