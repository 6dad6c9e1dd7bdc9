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

// Acceptance gate for the library: eight release criteria, one pass or
// fail line each. Every tolerance is pinned here, next to the check
// that uses it. Run with no arguments for all criteria or with a
// criterion number (1..8) for a single one; the exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smsp/error.hpp"
#include "smsp/harness.hpp"
#include "smsp/instance.hpp"
#include "smsp/invariants.hpp"
#include "smsp/linear_msp.hpp"
#include "smsp/matroid.hpp"
#include "smsp/objective.hpp"
#include "smsp/reduction.hpp"
#include "smsp/rng.hpp"
#include "smsp/stats.hpp"

namespace {

using namespace smsp;

constexpr double kExactTol = 1e-9;
constexpr std::uint64_t kSeed = 20260815;
const std::string kInstanceDir = SMSP_INSTANCE_DIR;

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

Instance shipped(const std::string& stem) {
  return load_instance(kInstanceDir + "/" + stem + ".json");
}

// Paired one-sample z statistics over per-trial differences. A zero
// standard error (constant differences) falls back to the sign of the
// mean so deterministic instances still get a verdict.
double z_of(const std::vector<double>& d) {
  StatSummary s = summarize(d);
  if (s.se > 0.0) return s.mean / s.se;
  if (s.mean > 0.0) return 1e18;
  if (s.mean < 0.0) return -1e18;
  return 0.0;
}

std::string num(double x) { return format_sig12(x); }

// ---- criterion 1: closed-form guarantee table ---------------------------

Verdict criterion_bound_table() {
  Verdict v;
  const double e = std::numbers::e;

  double unitary = ratio_bound(e, Variant::kNonmonotone, 1, 1.0 / e);
  if (std::abs(unitary - 96.0 * e) > kExactTol) {
    v.fail("unitary-partition bound " + num(unitary) + " != 96e");
  }
  if (std::llround(unitary) != 261) {
    v.fail("unitary-partition bound rounds to " +
           std::to_string(std::llround(unitary)) + ", want 261");
  }

  double transversal = ratio_bound(8.0, Variant::kNonmonotone, 1, 0.5);
  if (std::abs(transversal - 2496.0) > kExactTol) {
    v.fail("transversal bound " + num(transversal) + " != 2496");
  }

  for (int k = 1; k <= 5; ++k) {
    double got_n = ratio_bound(k * e, Variant::kNonmonotone, 1, 1.0 / e);
    double want_n = 24.0 * k * e * (3.0 * k + 1.0);
    if (std::abs(got_n - want_n) > 1e-6) {
      v.fail("sparse nonmonotone k=" + std::to_string(k) + ": " +
             num(got_n) + " != " + num(want_n));
    }
    double got_m = ratio_bound(k * e, Variant::kMonotone, 1, 1.0 / e);
    double want_m = 8.0 * k * e * (k + 1.0);
    if (std::abs(got_m - want_m) > 1e-6) {
      v.fail("sparse monotone k=" + std::to_string(k) + ": " + num(got_m) +
             " != " + num(want_m));
    }
  }

  // Laminar guarantees: grid search over the sampling probability must
  // recover the two stationary points and their values.
  auto grid_best = [](Variant variant) {
    double best_p = 0.0;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 10000; ++i) {
      double p = i * 1e-4;
      try {
        double ratio = laminar_ratio(p, variant);
        if (ratio < best_ratio) {
          best_ratio = ratio;
          best_p = p;
        }
      } catch (const Error&) {
        // outside the admissible range of this variant
      }
    }
    return std::pair<double, double>{best_p, best_ratio};
  };

  auto [p_non, ratio_non] = grid_best(Variant::kNonmonotone);
  if (std::llabs(std::llround(ratio_non) - 585) > 1) {
    v.fail("laminar nonmonotone optimum " + num(ratio_non) +
           " rounds outside 585 +- 1");
  }
  if (std::abs(p_non - 0.023768996072) > 1e-3) {
    v.fail("laminar nonmonotone argmin " + num(p_non) +
           " is not within 1e-3 of 0.023769");
  }
  auto [p_mon, ratio_mon] = grid_best(Variant::kMonotone);
  if (std::llabs(std::llround(ratio_mon) - 144) > 1) {
    v.fail("laminar monotone optimum " + num(ratio_mon) +
           " rounds outside 144 +- 1");
  }
  if (std::abs(p_mon - 0.976298652808) > 1e-3) {
    v.fail("laminar monotone argmin " + num(p_mon) +
           " is not within 1e-3 of 0.976299");
  }
  return v;
}

// ---- criterion 2: per-trial exact identities -----------------------------

Verdict criterion_exact_identities() {
  Verdict v;
  const std::vector<std::string> stems = {
      "partition4x3_coverage_n12", "uniform3_coverage_n12",
      "graphic_maxweight_n12",     "laminar_coverage_n12",
      "transversal_wrank_n10",     "sparse_linear_n10",
  };
  const long long trials_per_instance = 1700;  // 6 x 1700 > 10^4 trials
  double worst_weight = 0.0;
  double worst_convolution = 0.0;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    Instance inst = shipped(stems[i]);
    double f_empty = inst.objective.value(ElementSet{});
    ExperimentConfig ec;
    ec.algorithm = AlgorithmKey::kSmspSimulated;
    ec.linear = "greedy-online";
    ec.variant = Variant::kNonmonotone;
    ec.p = 1.0 / 3.0;
    ec.trials = trials_per_instance;
    ec.seed = kSeed + i;
    ec.with_convolution = true;
    TrialAggregate agg = run_trials(ec, inst);
    for (const TrialRow& row : agg.rows) {
      worst_weight = std::max(
          worst_weight, std::abs(row.w_greedy + f_empty - row.f_greedy));
      worst_convolution = std::max(
          worst_convolution, std::abs(row.f_greedy - row.fw_greedy));
    }
  }
  if (worst_weight > kExactTol) {
    v.fail("worst |w(M) + f({}) - f(M)| = " + num(worst_weight));
  }
  if (worst_convolution > kExactTol) {
    v.fail("worst |f(M) - f_w(M)| = " + num(worst_convolution));
  }
  if (v.ok) {
    v.detail = "worst deviations " + num(worst_weight) + " and " +
               num(worst_convolution) + " over 10200 trials";
  }
  return v;
}

// ---- criterion 3: expectation bounds on a fixed instance -----------------

Verdict criterion_expectation_bounds() {
  Verdict v;
  Instance inst = shipped("partition4x3_coverage_n12");
  const double f_opt =
      offline_opt(inst.objective, inst.matroid, inst.matroid.ground()).value;
  const long long trials = 100000;

  {
    const double p = 1.0 / 3.0;
    ExperimentConfig ec;
    ec.algorithm = AlgorithmKey::kSmspSimulated;
    ec.linear = "greedy-online";
    ec.variant = Variant::kNonmonotone;
    ec.p = p;
    ec.trials = trials;
    ec.seed = kSeed ^ 0x657870656374ULL;
    TrialAggregate agg = run_trials(ec, inst);
    std::vector<double> d(agg.rows.size());

    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      d[i] = agg.rows[i].w_candidates - p * agg.rows[i].w_greedy;
    }
    double z = z_of(d);
    if (std::abs(z) > 4.0) {
      v.fail("E[w(N)] vs p E[w(M)]: z = " + num(z));
    }

    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      d[i] = agg.rows[i].f_greedy - f_opt / 8.0;
    }
    z = z_of(d);
    if (z < -4.0) {
      v.fail("E[f(M)] vs f(OPT)/8: z = " + num(z));
    }

    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      d[i] = agg.rows[i].optw_candidates -
             p / (1.0 + p) * agg.rows[i].w_greedy;
    }
    z = z_of(d);
    if (z < -4.0) {
      v.fail("E[w(OPT_w(N))] vs p/(1+p) E[w(M)]: z = " + num(z));
    }
    if (v.ok) {
      v.detail = "E[f(M)] = " + num(agg.stats.at("f_greedy").mean) +
                 " vs f(OPT)/8 = " + num(f_opt / 8.0);
    }
  }

  {
    const double p = choose_p(std::numbers::e, Variant::kMonotone);
    ExperimentConfig ec;
    ec.algorithm = AlgorithmKey::kMsmspSimulated;
    ec.linear = "greedy-online";
    ec.variant = Variant::kMonotone;
    ec.p = p;
    ec.trials = trials;
    ec.seed = kSeed ^ 0x6d6f6e6fULL;
    TrialAggregate agg = run_trials(ec, inst);
    std::vector<double> d(agg.rows.size());

    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      d[i] = agg.rows[i].w_candidates -
             (1.0 - p) / p * agg.rows[i].w_greedy;
    }
    double z = z_of(d);
    if (std::abs(z) > 4.0) {
      v.fail("monotone E[w(N)] vs (1-p)/p E[w(M)]: z = " + num(z));
    }

    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      d[i] = agg.rows[i].f_greedy - p / 2.0 * f_opt;
    }
    z = z_of(d);
    if (z < -4.0) {
      v.fail("monotone E[f(M)] vs (p/2) f(OPT): z = " + num(z));
    }
  }
  return v;
}

// ---- criterion 4: pathwise coupling ---------------------------------------

Verdict criterion_coupling() {
  Verdict v;
  const char* specs[] = {
      "uniform(n=8,k=3)+coverage(universe=10)",
      "partition(n=8,classes=4,capacity=1)+maxweight(lo=0.1,hi=1)",
      "graphic(n=8,vertices=6)+linear(lo=0.1,hi=1)",
      "transversal(n=8,right=5)+wrank(k=3)",
  };
  const char* linears[] = {"greedy-online", "dynkin", "dynkin-capped"};
  const long long reps = 10000;
  long long mismatches = 0;
  std::string first;
  RandomTape master(kSeed ^ 0x636f75706c6578ULL);
  for (long long rep = 0; rep < reps; ++rep) {
    RandomTape tape = master.derived(rep);
    Instance inst = generate_instance(specs[rep % 4],
                                      tape.stream_seed(Stream::kGenerator));
    const std::string key =
        rep % 4 == 1 ? "partition" : linears[(rep / 4) % 3];
    LinearFactory linear = make_linear(key, inst);
    Rng learn_rng = tape.stream(Stream::kLearning);
    Rng flip_rng = tape.stream(Stream::kCoins);
    ElementSet learn;
    ElementSet flips;
    for (Element u : inst.matroid.ground()) {
      if (learn_rng.bernoulli(0.5)) learn.insert(u);
      if (flip_rng.bernoulli(1.0 / 3.0)) flips.insert(u);
    }
    std::vector<Element> pi =
        set_difference(inst.matroid.ground(), learn).elements();
    Rng shuffle_rng = tape.stream(Stream::kShuffle);
    shuffle_rng.shuffle(pi);
    CoupledResult res = coupled_pair(learn, flips, pi, 1.0 / 3.0, inst,
                                     linear, tape.stream_seed(Stream::kLinear));
    bool fields_equal = res.online.greedy_set == res.simulated.greedy_set &&
                        res.online.candidates == res.simulated.candidates &&
                        res.online.w == res.simulated.w &&
                        res.online.output == res.simulated.output;
    if (!res.identical || !fields_equal) {
      ++mismatches;
      if (first.empty()) {
        first = "tuple " + std::to_string(rep) + " (" + key + "): " +
                (res.mismatch.empty() ? "field mismatch" : res.mismatch);
      }
    }
  }
  if (mismatches != 0) {
    v.fail(std::to_string(mismatches) + " of " + std::to_string(reps) +
           " tuples differ; first: " + first);
  } else {
    v.detail = "10000 coupled tuples, zero mismatches";
  }
  return v;
}

// ---- criteria 5, 6, 8: invariant registry suites --------------------------

Verdict suite_verdict(const std::string& suite, long long trials) {
  Verdict v;
  InvariantConfig cfg;
  cfg.suite = suite;
  cfg.trials = trials;
  cfg.seed = kSeed;
  std::vector<InvariantResult> results = check_invariants(cfg);
  if (results.empty()) {
    v.fail("suite '" + suite + "' ran no checks");
    return v;
  }
  int passed = 0;
  for (const InvariantResult& r : results) {
    if (r.status == "pass") {
      ++passed;
      continue;
    }
    v.fail(r.name + ": " + r.status +
           (r.detail.empty() ? "" : " (" + r.detail + ")"));
  }
  if (v.ok) {
    v.detail = std::to_string(passed) + " checks in suite '" + suite + "'";
  }
  return v;
}

Verdict criterion_partition_probabilities() {
  return suite_verdict("partition", 200000);
}

Verdict criterion_threshold_rule() { return suite_verdict("dynkin", 100000); }

Verdict criterion_oracle_suites() {
  Verdict v;
  for (const char* suite : {"matroid", "function", "reduction", "wrapper"}) {
    Verdict part = suite_verdict(suite, 20000);
    if (!part.ok) v.fail(part.detail);
  }
  if (v.ok) v.detail = "matroid, function, reduction and wrapper suites";
  return v;
}

// ---- criterion 7: end-to-end guarantee on shipped pairings ----------------

Verdict criterion_end_to_end() {
  Verdict v;
  const std::vector<std::string> stems = {
      "partition4x5_maxweight_n20",
      "partition4x3_coverage_n12",
      "uniform1_maxweight_n15",
      "uniform3_coverage_n12",
  };
  for (std::size_t i = 0; i < stems.size(); ++i) {
    Instance inst = shipped(stems[i]);
    if (!inst.pairing.has_value()) {
      v.fail(stems[i] + " ships without a declared pairing");
      continue;
    }
    const double alpha = inst.pairing->alpha;
    const std::optional<double> q = inst.pairing->q;
    const double p = choose_p(alpha, Variant::kNonmonotone, q);
    const double bound = ratio_bound(alpha, Variant::kNonmonotone, 1, q);
    const double f_opt =
        offline_opt(inst.objective, inst.matroid, inst.matroid.ground())
            .value;
    ExperimentConfig ec;
    ec.algorithm = AlgorithmKey::kSmspOnline;
    ec.linear = inst.pairing->linear;
    ec.variant = Variant::kNonmonotone;
    ec.p = p;
    ec.trials = 100000;
    ec.seed = kSeed + 1000 + i;
    TrialAggregate agg = run_trials(ec, inst);
    double mean = agg.stats.at("f_output").mean;
    double target = f_opt / bound;
    if (mean < target) {
      v.fail(stems[i] + ": E[f(output)] = " + num(mean) + " < " +
             num(target) + " = f(OPT)/" + num(bound));
    } else if (v.ok) {
      if (!v.detail.empty()) v.detail += "; ";
      v.detail += stems[i] + " margin x" +
                  num(target > 0.0 ? mean / target : 0.0);
    }
  }
  return v;
}

// ---- driver ----------------------------------------------------------------

struct Criterion {
  int number;
  std::string label;
  std::function<Verdict()> run;
  double budget_seconds;  // 0 means no stated budget
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "guarantee table reproduction", criterion_bound_table, 1.0},
      {2, "per-trial weight and convolution identities",
       criterion_exact_identities, 120.0},
      {3, "expectation bounds on the fixed 12-element instance",
       criterion_expectation_bounds, 300.0},
      {4, "online/simulated coupling equivalence", criterion_coupling, 0.0},
      {5, "class-rule selection probabilities",
       criterion_partition_probabilities, 180.0},
      {6, "single-selection threshold rule", criterion_threshold_rule, 0.0},
      {7, "end-to-end guarantee on shipped pairings", criterion_end_to_end,
       0.0},
      {8, "exhaustive oracle and sampling suites", criterion_oracle_suites,
       120.0},
  };

  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 8) {
      std::cerr << "usage: " << argv[0] << " [criterion 1..8]\n";
      return 64;
    }
  }

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.number != only) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v = c.run();
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (c.budget_seconds > 0.0 && elapsed >= c.budget_seconds) {
      v.fail("time budget " + num(c.budget_seconds) + " s exceeded");
    }
    std::ostringstream line;
    line << (v.ok ? "pass" : "fail") << " criterion " << c.number << ": "
         << c.label << " (" << format_sig12(elapsed) << " s)";
    if (!v.detail.empty()) line << " -- " << v.detail;
    std::cout << line.str() << "\n";
    if (!v.ok) ++failures;
  }
  return failures;
}
