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

#include "smsp/instance.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "smsp/error.hpp"
#include "test_support.hpp"

using namespace smsp;
using smsp::test::for_all_subsets;

namespace {

template <typename ErrCheck>
void expect_error(Err code, ErrCheck&& run) {
  try {
    run();
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

// Serialization must be a fixed point of parse + serialize.
void check_roundtrip(const std::string& text) {
  Instance first = parse_instance(text);
  std::string dumped = instance_to_json(first);
  Instance second = parse_instance(dumped);
  CHECK(instance_to_json(second) == dumped);
  CHECK(second.n == first.n);
  CHECK(second.name == first.name);
  for_all_subsets(first.matroid.ground(), [&](const ElementSet& s) {
    CHECK(second.matroid.is_independent(s) == first.matroid.is_independent(s));
    CHECK(second.objective.value(s) ==
          doctest::Approx(first.objective.value(s)));
  });
}

}  // namespace

TEST_CASE("documents with every matroid kind survive a round trip") {
  check_roundtrip(R"({
    "name": "uniform-linear",
    "ground": {"n": 4},
    "matroid": {"kind": "uniform", "k": 2},
    "objective": {"kind": "linear", "weights": [1, 2, 3, 4]}
  })");
  check_roundtrip(R"({
    "name": "partition-coverage",
    "ground": {"n": 4},
    "matroid": {"kind": "partition", "class_of": [0, 0, 1, 1],
                "capacity_of": [1, 2]},
    "objective": {"kind": "coverage", "covers": [[0], [0, 1], [1], [2]],
                  "item_weights": [1, 0.5, 2], "shift": 0.5}
  })");
  check_roundtrip(R"({
    "name": "graphic-maxweight",
    "ground": {"n": 6},
    "matroid": {"kind": "graphic",
                "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},
    "objective": {"kind": "max_weight", "weights": [3, 1, 4, 1, 5, 9]}
  })");
  check_roundtrip(R"({
    "name": "laminar-wrank",
    "ground": {"n": 4},
    "matroid": {"kind": "laminar",
                "family": [{"set": [0, 1, 2, 3], "capacity": 2},
                           {"set": [0, 1], "capacity": 1}]},
    "objective": {"kind": "weighted_rank",
                  "inner": {"kind": "partition", "class_of": [0, 0, 1, 1],
                            "capacity_of": [1, 1]},
                  "weights": [2, 5, 3, 1]}
  })");
  check_roundtrip(R"({
    "name": "transversal-linear",
    "ground": {"n": 3},
    "matroid": {"kind": "transversal", "adjacency": [[0], [0, 1], [1]]},
    "objective": {"kind": "linear", "weights": [1, 1, 1]}
  })");
  check_roundtrip(R"({
    "name": "sparse-linear",
    "ground": {"n": 3},
    "matroid": {"kind": "linear_sparse",
                "columns": [[1, 0], [0, 1], [1, 1]], "sparsity": 2},
    "objective": {"kind": "linear", "weights": [1, 2, 3]}
  })");
  check_roundtrip(R"({
    "name": "restricted-uniform",
    "ground": {"n": 5},
    "matroid": {"kind": "restriction",
                "base": {"kind": "uniform", "k": 2}, "keep": [0, 2, 3]},
    "objective": {"kind": "linear", "weights": [1, 2, 3, 4, 5]}
  })");
}

TEST_CASE("a declared experiment pairing survives a round trip") {
  Instance inst = parse_instance(R"({
    "name": "paired",
    "ground": {"n": 2},
    "matroid": {"kind": "uniform", "k": 1},
    "objective": {"kind": "linear", "weights": [1, 2]},
    "experiment": {"linear": "dynkin-capped", "alpha": 2.718281828459045,
                   "q": 0.36787944117144233}
  })");
  REQUIRE(inst.pairing.has_value());
  CHECK(inst.pairing->linear == "dynkin-capped");
  CHECK(inst.pairing->alpha == doctest::Approx(2.718281828459045));
  REQUIRE(inst.pairing->q.has_value());
  CHECK(*inst.pairing->q == doctest::Approx(0.36787944117144233));
  Instance again = parse_instance(instance_to_json(inst));
  REQUIRE(again.pairing.has_value());
  CHECK(again.pairing->linear == inst.pairing->linear);
  CHECK(again.pairing->alpha == inst.pairing->alpha);
  CHECK(again.pairing->q == inst.pairing->q);

  Instance no_q = parse_instance(R"({
    "ground": {"n": 1},
    "matroid": {"kind": "uniform", "k": 1},
    "objective": {"kind": "linear", "weights": [1]},
    "experiment": {"linear": "greedy-online", "alpha": 4.0}
  })");
  REQUIRE(no_q.pairing.has_value());
  CHECK_FALSE(no_q.pairing->q.has_value());
  CHECK(no_q.name.empty());
}

TEST_CASE("malformed documents are rejected") {
  expect_error(Err::kParseError, [] { parse_instance("not json at all"); });
  expect_error(Err::kParseError, [] { parse_instance("[1, 2, 3]"); });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"matroid": {"kind": "uniform", "k": 1},
                       "objective": {"kind": "linear", "weights": []}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": 2.5},
                       "matroid": {"kind": "uniform", "k": 1},
                       "objective": {"kind": "linear", "weights": [1, 1]}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": -1},
                       "matroid": {"kind": "uniform", "k": 1},
                       "objective": {"kind": "linear", "weights": []}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": 1},
                       "matroid": {"kind": "moebius"},
                       "objective": {"kind": "linear", "weights": [1]}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": 1},
                       "matroid": {"kind": "uniform", "k": 1},
                       "objective": {"kind": "entropy"}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": 1},
                       "matroid": {"kind": "graphic", "edges": [[0, 1, 2]]},
                       "objective": {"kind": "linear", "weights": [1]}})");
  });
  expect_error(Err::kParseError, [] {
    parse_instance(R"({"ground": {"n": 1},
                       "matroid": {"kind": "uniform", "k": 1},
                       "objective": {"kind": "linear", "weights": [1]},
                       "experiment": {"linear": "greedy-online"}})");
  });
}

TEST_CASE("instances load from disk and missing files are io errors") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "roundtrip_instance.json";
  const std::string text = R"({
    "name": "on-disk",
    "ground": {"n": 2},
    "matroid": {"kind": "uniform", "k": 1},
    "objective": {"kind": "linear", "weights": [1, 2]}
  })";
  {
    std::ofstream out(path);
    out << text;
  }
  Instance inst = load_instance(path.string());
  CHECK(inst.name == "on-disk");
  CHECK(inst.n == 2);
  fs::remove(path);
  expect_error(Err::kIoError, [&] { load_instance(path.string()); });
}

TEST_CASE("custom objectives cannot be serialized") {
  Instance inst{"custom", 2, Matroid(UniformSpec{1}, 2),
                Objective::custom(2, [](const ElementSet& s) {
                  return double(s.size());
                }, true),
                std::nullopt};
  expect_error(Err::kInvalidArgs, [&] { instance_to_json(inst); });
}

TEST_CASE("the generator is deterministic in spec and seed") {
  Instance a = generate_instance("uniform(n=4,k=2)+linear()", 7);
  Instance b = generate_instance("uniform( n=4, k=2 ) + linear( )", 7);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK(a.name == "uniform(n=4,k=2)+linear()@7");
  CHECK(a.n == 4);
  CHECK(a.matroid.rank_full() == 2);
  CHECK_FALSE(a.pairing.has_value());
}

TEST_CASE("every generator family produces a valid instance") {
  const char* specs[] = {
      "uniform(n=7,k=3)+coverage(universe=10)",
      "partition(n=8,classes=3,capacity=2)+maxweight(lo=1,hi=2)",
      "graphic(n=8,vertices=5)+linear(lo=0.5,hi=1.5,shift=1)",
      "laminar(n=8)+coverage(universe=12,shift=2.5)",
      "transversal(n=7,right=4)+wrank(k=2)",
      "sparse(n=8,rows=5,sparsity=2)+linear()",
  };
  for (const char* spec : specs) {
    CAPTURE(spec);
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      Instance inst = generate_instance(spec, seed);
      CHECK(inst.n > 0);
      AxiomReport axioms = verify_axioms(inst.matroid);
      CAPTURE(axioms.violation);
      CHECK(axioms.ok);
      SubmodularityReport sub = check_submodular(inst.objective);
      CAPTURE(sub.violation);
      CHECK(sub.ok());
      CHECK(sub.monotone);
    }
  }
}

TEST_CASE("generator specs are validated") {
  expect_error(Err::kParseError,
               [] { generate_instance("moebius(n=3)+linear()", 1); });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(n=3,k=1)+entropy()", 1); });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(n=3,z=1,k=1)+linear()", 1); });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(k=2)+linear()", 1); });
  expect_error(Err::kParseError, [] {
    generate_instance("uniform(n=3,n=4,k=1)+linear()", 1);
  });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(n=3.5,k=1)+linear()", 1); });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(n=abc,k=1)+linear()", 1); });
  expect_error(Err::kParseError,
               [] { generate_instance("uniform(n=3,k=1)", 1); });
  expect_error(Err::kParseError, [] {
    generate_instance("uniform(n=3,k=1)+linear()+linear()", 1);
  });
}

TEST_CASE("references resolve to generators or files") {
  Instance gen = resolve_instance("gen:uniform(n=4,k=2)+linear()", 7);
  CHECK(gen.n == 4);
  expect_error(Err::kIoError,
               [] { resolve_instance("/nonexistent/path.json", 1); });
}
