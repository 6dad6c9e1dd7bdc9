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

#include "smsp/cli.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun result;
  result.code = smsp::run_cli(std::move(args), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n' ? 1 : 0;
  return lines;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

const std::string kTinyGen = "gen:uniform(n=6,k=2)+coverage(universe=8)";

}  // namespace

TEST_CASE("usage errors exit with code two") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"simulate"}).code == 2);  // --instance is required
  CHECK(run({"bounds", "--no-such-flag"}).code == 2);
  CliRun bad = run({"simulate", "--instance", kTinyGen, "--algorithm",
                    "offline", "--trials", "1"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "unknown algorithm"));
}

TEST_CASE("help prints and exits cleanly") {
  CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "simulate"));
  CHECK(contains(help.out, "bounds"));
  CHECK(contains(help.out, "invariants"));
}

TEST_CASE("the default bound table lists every shipped pairing") {
  CliRun r = run({"bounds"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 13);
  CHECK(contains(r.out, "nonmonotone alpha=1 p=0.333333333333 ratio=96\n"));
  CHECK(contains(r.out, "monotone alpha=1 p=0.75 ratio=16\n"));
  CHECK(contains(r.out, "monotone-optfilter alpha=2 p=0.75 ratio=32\n"));
  CHECK(contains(r.out, "class-marking nonmonotone-capped alpha=e q=1/e"));
  CHECK(contains(r.out, "ratio=260.955055532"));
  CHECK(contains(r.out, "nonmonotone-capped alpha=8 q=1/2 p=0.0833333333333 "
                        "ratio=2496\n"));
  CHECK(contains(r.out, "sparse k=2 nonmonotone-capped alpha=ke q=1/e"));
  CHECK(contains(r.out, "sparse k=3 monotone-capped alpha=ke q=1/e"));
  CHECK(contains(r.out, "laminar-monotone p=0.976298652808 "
                        "ratio=143.879313004\n"));
  CHECK(contains(r.out, "laminar-nonmonotone p=0.023768996072 "
                        "ratio=585.182767173\n"));
}

TEST_CASE("a single bound row from quoted constants") {
  CliRun r = run({"bounds", "--alpha", "2.718281828", "--q", "0.367879441",
                  "--variant", "nonmonotone-capped"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 1);
  CHECK(contains(r.out, "nonmonotone-capped alpha=2.718281828 "
                        "q=0.367879441"));
  CHECK(contains(r.out, "p=0.333333333"));
  CHECK(contains(r.out, "ratio=260.95505"));
}

TEST_CASE("the laminar guarantee mode evaluates one probability") {
  CliRun r = run({"bounds", "--p", "0.976298652808", "--variant", "monotone"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "laminar-monotone p=0.976298652808 "
                        "ratio=143.879313004"));
  CHECK(run({"bounds", "--p", "0.5", "--variant", "monotone"}).code == 2);
  CHECK(run({"bounds", "--p", "0.9", "--variant", "monotone-capped"}).code ==
        2);
}

TEST_CASE("bound arguments must be consistent") {
  CHECK(run({"bounds", "--q", "0.5"}).code == 2);
  CHECK(run({"bounds", "--k", "2"}).code == 2);
  CHECK(run({"bounds", "--alpha", "2", "--variant", "nonmonotone-capped"})
            .code == 2);
  CHECK(run({"bounds", "--alpha", "2", "--q", "0.6", "--variant",
             "nonmonotone"})
            .code == 2);
  CHECK(run({"bounds", "--alpha", "2", "--variant", "sideways"}).code == 2);
}

TEST_CASE("simulation emits a stable csv summary") {
  std::vector<std::string> args = {"simulate", "--instance", kTinyGen,
                                   "--trials", "5", "--threads", "1",
                                   "--seed", "7"};
  CliRun a = run(args);
  CHECK(a.code == 0);
  CHECK(a.out.rfind("statistic,mean,se,trials\n", 0) == 0);
  CHECK(count_lines(a.out) == 9);  // header + eight statistics
  CHECK(contains(a.out, "f_output,"));
  CHECK(contains(a.out, "optw_candidates,"));
  CHECK(contains(a.out, ",5\n"));
  CliRun b = run(args);
  CHECK(a.out == b.out);
  std::vector<std::string> threaded = args;
  threaded[6] = "3";  // --threads 3
  CliRun c = run(threaded);
  CHECK(a.out == c.out);
}

TEST_CASE("simulation emits one json record per trial") {
  std::vector<std::string> args = {"simulate", "--instance", kTinyGen,
                                   "--trials", "4", "--threads", "1",
                                   "--seed", "7", "--emit", "jsonl"};
  CliRun r = run(args);
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 4);
  std::istringstream lines(r.out);
  std::string line;
  int expected_trial = 0;
  while (std::getline(lines, line)) {
    nlohmann::json row = nlohmann::json::parse(line);
    CHECK(row.at("trial").get<int>() == expected_trial++);
    CHECK(row.contains("f_output"));
    CHECK(row.contains("w_candidates"));
    CHECK(row.contains("optw_candidates"));
    CHECK(row.at("x").is_number_integer());
  }
  CHECK(expected_trial == 4);
  CliRun again = run(args);
  CHECK(again.out == r.out);
}

TEST_CASE("simulation validates its options") {
  CHECK(run({"simulate", "--instance", kTinyGen, "--trials", "0"}).code == 2);
  CHECK(run({"simulate", "--instance", kTinyGen, "--trials", "1", "--p",
             "1.5"})
            .code == 2);
  CHECK(run({"simulate", "--instance", kTinyGen, "--trials", "1", "--p",
             "zero"})
            .code == 2);
  CHECK(run({"simulate", "--instance", kTinyGen, "--trials", "1", "--emit",
             "yaml"})
            .code == 2);
  CHECK(run({"simulate", "--instance", "gen:nope(n=1)+linear()", "--trials",
             "1"})
            .code == 2);
  CHECK(run({"simulate", "--instance", "/missing.json", "--trials", "1"})
            .code == 2);
}

TEST_CASE("subroutine-only simulation accepts known elements") {
  CliRun r = run({"simulate", "--instance",
                  "gen:uniform(n=4,k=4)+linear(lo=0.5,hi=1)", "--algorithm",
                  "linear", "--linear", "greedy-online", "--partial-L", "0",
                  "--partial-L", "1", "--trials", "3", "--threads", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "output_size,2,"));
}

TEST_CASE("invariant suites print one verdict per check") {
  CliRun r = run({"invariants", "--suite", "bounds"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) >= 5);
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    CAPTURE(line);
    CHECK(line.rfind("pass", 0) == 0);
    CHECK(contains(line, "["));
  }
}

TEST_CASE("oversized instances skip the exhaustive oracle without failing") {
  CliRun r = run({"invariants", "--suite", "function", "--instance",
                  "gen:partition(n=20,classes=4,capacity=1)"
                  "+maxweight(lo=0.1,hi=1)",
                  "--trials", "200"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "skipped  objective-submodularity"));
  CHECK(contains(r.out, "exhaustive cap"));
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    CAPTURE(line);
    CHECK(line.rfind("skipped", 0) == 0);
  }
}

TEST_CASE("coupling entries scale with the requested seeds") {
  CliRun r = run({"invariants", "--suite", "coupling", "--seeds", "5"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 5);
  CHECK(contains(r.out, "coupling-tuple-0"));
  CHECK(contains(r.out, "coupling-tuple-4"));
}

TEST_CASE("unknown suites are usage errors") {
  CHECK(run({"invariants", "--suite", "nope"}).code == 2);
}

TEST_CASE("oracle verification subcommands report ok") {
  CliRun m = run({"verify-matroid", "--instance",
                  "gen:graphic(n=8,vertices=5)+linear()"});
  CHECK(m.code == 0);
  CHECK(m.out.rfind("ok ", 0) == 0);
  CHECK(contains(m.out, "independent_sets="));
  CliRun f = run({"verify-function", "--instance",
                  "gen:laminar(n=8)+coverage(universe=12,shift=2.5)"});
  CHECK(f.code == 0);
  CHECK(f.out.rfind("ok ", 0) == 0);
  CHECK(contains(f.out, "submodular=yes"));
  CHECK(contains(f.out, "monotone=yes"));
  CHECK(contains(f.out, "f_empty=2.5"));
  CHECK(run({"verify-matroid", "--instance", "gen:uniform(n=20,k=2)+linear()"})
            .code == 2);  // exhaustive check caps at sixteen elements
}
