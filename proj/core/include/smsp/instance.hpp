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

#ifndef SMSP_INSTANCE_HPP_
#define SMSP_INSTANCE_HPP_

#include <optional>
#include <string>

#include "smsp/matroid.hpp"
#include "smsp/objective.hpp"

namespace smsp {

// Problem instance: a ground set of n elements with an independence
// oracle and a value oracle. The arrival order is not part of the
// instance; trials draw it fresh.
struct Instance {
  std::string name;
  int n = 0;
  Matroid matroid;
  Objective objective;

  // Optional declared pairing with a linear subroutine for end-to-end
  // experiments: subroutine key plus its certified competitive ratio
  // and, when the subroutine caps per-element selection, the cap.
  struct Pairing {
    std::string linear;
    double alpha = 0.0;
    std::optional<double> q;
  };
  std::optional<Pairing> pairing;
};

// JSON document round-trip. The document layout is
//   {"name": ..., "ground": {"n": ...}, "matroid": {...},
//    "objective": {...}, "experiment": {...}?}
// with "kind"-discriminated matroid/objective sections.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& instance);

// Built-in generator, addressed by a compact spec string such as
//   "uniform(n=12,k=3)+coverage(universe=20)"
//   "partition(n=12,classes=4)+coverage(universe=20,shift=2.5)"
// Deterministic in (spec, seed).
Instance generate_instance(const std::string& spec, std::uint64_t seed);

// Accepts either a file path or "gen:<spec>".
Instance resolve_instance(const std::string& ref, std::uint64_t seed);

}  // namespace smsp

#endif  // SMSP_INSTANCE_HPP_
