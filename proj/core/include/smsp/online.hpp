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

#ifndef SMSP_ONLINE_HPP_
#define SMSP_ONLINE_HPP_

#include <functional>
#include <memory>

#include "smsp/element_set.hpp"
#include "smsp/matroid.hpp"
#include "smsp/rng.hpp"

namespace smsp {

// One-pass selection algorithm. Elements arrive once, each with a
// non-negative weight; decisions are immediate and irrevocable and the
// selected set stays independent in the supplied matroid.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  // Returns true iff u was selected.
  virtual bool on_arrival(Element u, double weight) = 0;

  // Final selected set; call once, after the last arrival.
  virtual ElementSet finish() = 0;
};

struct LinearContext {
  int n = 0;                       // total stream length
  const Matroid* matroid = nullptr;  // oracle over the full ground set
  std::uint64_t seed = 0;          // private randomness
};

using LinearFactory =
    std::function<std::unique_ptr<OnlineAlgorithm>(const LinearContext&)>;

}  // namespace smsp

#endif  // SMSP_ONLINE_HPP_
