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

// Regenerates the instance files shipped under instances/. Every file
// is a deterministic generator draw plus, where a subroutine pairing
// is declared, the pairing's certified ratio. Usage:
//   smsp_make_instances <output-dir>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "smsp/instance.hpp"
#include "smsp/linear_msp.hpp"

namespace {

using namespace smsp;

struct Shipped {
  std::string stem;
  std::string spec;
  std::uint64_t seed;
  std::optional<Instance::Pairing> pairing;
};

std::vector<Shipped> catalogue() {
  const double e = std::numbers::e;
  const double a20 = alpha_partition(20);
  const double a12 = alpha_partition(12);
  return {
      {"partition4x5_maxweight_n20",
       "partition(n=20,classes=4,capacity=1)+maxweight(lo=0.1,hi=1)", 11,
       Instance::Pairing{"partition", a20, 1.0 / a20}},
      {"partition4x3_coverage_n12",
       "partition(n=12,classes=4,capacity=1)+coverage(universe=16)", 3,
       Instance::Pairing{"partition", a12, 1.0 / a12}},
      {"uniform1_maxweight_n15", "uniform(n=15,k=1)+maxweight(lo=0.1,hi=1)",
       5, Instance::Pairing{"dynkin-capped", e, 1.0 / e}},
      {"uniform3_coverage_n12", "uniform(n=12,k=3)+coverage(universe=14)", 7,
       Instance::Pairing{"greedy-online", 4.0, std::nullopt}},
      {"graphic_maxweight_n12", "graphic(n=12,vertices=7)+maxweight(lo=0.5,hi=2)",
       9, std::nullopt},
      {"laminar_coverage_n12", "laminar(n=12)+coverage(universe=16,shift=2.5)",
       13, std::nullopt},
      {"transversal_wrank_n10", "transversal(n=10,right=6)+wrank(k=3)", 17,
       std::nullopt},
      {"sparse_linear_n10", "sparse(n=10,rows=6,sparsity=2)+linear(lo=0.2,hi=1.2)",
       19, std::nullopt},
  };
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <output-dir>\n";
    return 64;
  }
  const std::string dir = argv[1];
  for (const Shipped& s : catalogue()) {
    Instance inst = generate_instance(s.spec, s.seed);
    inst.name = s.stem;
    inst.pairing = s.pairing;
    const std::string path = dir + "/" + s.stem + ".json";
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot open " << path << "\n";
      return 1;
    }
    out << instance_to_json(inst);
    std::cout << path << "\n";
  }
  return 0;
}
