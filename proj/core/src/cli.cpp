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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smsp/error.hpp"
#include "smsp/harness.hpp"
#include "smsp/instance.hpp"
#include "smsp/invariants.hpp"
#include "smsp/linear_msp.hpp"
#include "smsp/reduction.hpp"
#include "smsp/stats.hpp"

namespace smsp {
namespace {

constexpr std::uint64_t kDefaultSeed = 20260815;

std::string set_to_string(const ElementSet& s) {
  std::string text = "{";
  bool first = true;
  for (Element u : s.elements()) {
    if (!first) text += ",";
    text += std::to_string(u);
    first = false;
  }
  return text + "}";
}

std::string set_to_string(const std::optional<ElementSet>& s) {
  return s.has_value() ? set_to_string(*s) : std::string("{}");
}

double parse_real(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty(), Err::kInvalidArgs,
          flag + " expects a real number, got '" + text + "'");
  return value;
}

Variant parse_variant(const std::string& text) {
  if (text == "nonmonotone") return Variant::kNonmonotone;
  if (text == "monotone") return Variant::kMonotone;
  fail(Err::kInvalidArgs, "unknown variant '" + text +
                              "' (expected nonmonotone or monotone)");
}

// ---- simulate ----------------------------------------------------------

struct SimulateOptions {
  std::string instance;
  std::uint64_t gen_seed = 1;
  std::string algorithm = "smsp-simulated";
  std::string linear;   // empty: pairing, then greedy-online
  std::string variant;  // empty: implied by the algorithm
  std::string p = "auto";
  std::optional<double> alpha;
  std::optional<double> q;
  long long trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::string emit = "csv";
  std::vector<int> partial;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  Instance inst = resolve_instance(opt.instance, opt.gen_seed);

  std::optional<AlgorithmKey> algo = algorithm_from_key(opt.algorithm);
  require(algo.has_value(), Err::kInvalidArgs,
          "unknown algorithm '" + opt.algorithm + "'");

  ExperimentConfig ec;
  ec.algorithm = *algo;
  if (!opt.linear.empty()) {
    ec.linear = opt.linear;
  } else if (inst.pairing.has_value()) {
    ec.linear = inst.pairing->linear;
  }
  if (!opt.variant.empty()) {
    ec.variant = parse_variant(opt.variant);
  } else {
    ec.variant = (*algo == AlgorithmKey::kMsmspOnline ||
                  *algo == AlgorithmKey::kMsmspSimulated)
                     ? Variant::kMonotone
                     : Variant::kNonmonotone;
  }
  if (opt.p != "auto") ec.p = parse_real(opt.p, "--p");
  if (opt.alpha.has_value()) {
    ec.alpha = *opt.alpha;
  } else if (inst.pairing.has_value()) {
    ec.alpha = inst.pairing->alpha;
  }
  ec.q = opt.q.has_value() ? opt.q
                           : (inst.pairing.has_value() ? inst.pairing->q
                                                       : std::nullopt);
  ec.trials = opt.trials;
  ec.seed = opt.seed;
  ec.threads = opt.threads;
  for (int u : opt.partial) {
    require(u >= 0, Err::kUnknownElement,
            "--partial-L ids must be non-negative");
    ec.partial_known.insert(u);
  }

  TrialAggregate agg = run_trials(ec, inst);

  if (opt.emit == "jsonl") {
    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      const TrialRow& r = agg.rows[i];
      out << "{\"trial\":" << i << ",\"x\":" << r.x
          << ",\"learn_size\":" << r.learn_size
          << ",\"greedy_size\":" << r.greedy_size
          << ",\"candidate_size\":" << r.candidate_size
          << ",\"zero_size\":" << r.zero_size
          << ",\"output_size\":" << r.output_size
          << ",\"f_greedy\":" << format_sig12(r.f_greedy)
          << ",\"w_greedy\":" << format_sig12(r.w_greedy)
          << ",\"w_candidates\":" << format_sig12(r.w_candidates)
          << ",\"f_output\":" << format_sig12(r.f_output)
          << ",\"w_output\":" << format_sig12(r.w_output)
          << ",\"optw_candidates\":" << format_sig12(r.optw_candidates)
          << "}\n";
    }
    return 0;
  }
  require(opt.emit == "csv", Err::kInvalidArgs,
          "unknown emit format '" + opt.emit + "' (expected jsonl or csv)");
  out << "statistic,mean,se,trials\n";
  for (const auto& [key, s] : agg.stats) {
    out << key << "," << format_sig12(s.mean) << "," << format_sig12(s.se)
        << "," << agg.trials << "\n";
  }
  return 0;
}

// ---- bounds ------------------------------------------------------------

struct BoundsOptions {
  std::optional<double> alpha;
  std::optional<double> q;
  std::optional<double> p;  // laminar guarantee mode
  std::string variant = "nonmonotone";
  int k = 1;
};

struct VariantKey {
  Variant variant = Variant::kNonmonotone;
  bool capped = false;
  bool opt_filter = false;
};

VariantKey parse_variant_key(const std::string& text) {
  if (text == "nonmonotone") return {Variant::kNonmonotone, false, false};
  if (text == "nonmonotone-capped") return {Variant::kNonmonotone, true,
                                            false};
  if (text == "monotone") return {Variant::kMonotone, false, false};
  if (text == "monotone-capped") return {Variant::kMonotone, true, false};
  if (text == "monotone-optfilter") return {Variant::kMonotone, false, true};
  fail(Err::kInvalidArgs, "unknown variant '" + text + "'");
}

void print_bound_row(std::ostream& out, const std::string& label, double p,
                     double ratio) {
  out << label << " p=" << format_sig12(p) << " ratio=" << format_sig12(ratio)
      << "\n";
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out) {
  if (opt.p.has_value()) {
    VariantKey key = parse_variant_key(opt.variant);
    require(!key.capped && !key.opt_filter, Err::kInvalidArgs,
            "the laminar guarantee takes plain monotone or nonmonotone");
    double ratio = laminar_ratio(*opt.p, key.variant);
    print_bound_row(out, "laminar-" + opt.variant, *opt.p, ratio);
    return 0;
  }
  if (opt.alpha.has_value()) {
    VariantKey key = parse_variant_key(opt.variant);
    require(key.capped == opt.q.has_value(), Err::kInvalidArgs,
            "--q is required for capped variants and only for them");
    double p = choose_p(*opt.alpha, key.variant, opt.q, key.opt_filter);
    double ratio =
        ratio_bound(*opt.alpha, key.variant, opt.k, opt.q, key.opt_filter);
    std::string label = opt.variant + " alpha=" + format_sig12(*opt.alpha);
    if (opt.q.has_value()) label += " q=" + format_sig12(*opt.q);
    if (opt.k != 1) label += " k=" + std::to_string(opt.k);
    print_bound_row(out, label, p, ratio);
    return 0;
  }
  require(!opt.q.has_value() && opt.k == 1, Err::kInvalidArgs,
          "--q and --k need --alpha");

  const double e = std::numbers::e;
  auto row = [&](const std::string& label, double alpha, Variant v,
                 std::optional<double> q, bool opt_filter) {
    print_bound_row(out, label, choose_p(alpha, v, q, opt_filter),
                    ratio_bound(alpha, v, 1, q, opt_filter));
  };
  row("nonmonotone alpha=1", 1.0, Variant::kNonmonotone, std::nullopt, false);
  row("monotone alpha=1", 1.0, Variant::kMonotone, std::nullopt, false);
  row("monotone-optfilter alpha=2", 2.0, Variant::kMonotone, std::nullopt,
      true);
  row("class-marking nonmonotone-capped alpha=e q=1/e", e,
      Variant::kNonmonotone, 1.0 / e, false);
  row("class-marking monotone-capped alpha=e q=1/e", e, Variant::kMonotone,
      1.0 / e, false);
  row("nonmonotone-capped alpha=8 q=1/2", 8.0, Variant::kNonmonotone, 0.5,
      false);
  row("monotone-capped alpha=8 q=1/2", 8.0, Variant::kMonotone, 0.5, false);
  for (int k : {2, 3}) {
    std::string tag = "sparse k=" + std::to_string(k);
    row(tag + " nonmonotone-capped alpha=ke q=1/e", k * e,
        Variant::kNonmonotone, 1.0 / e, false);
    row(tag + " monotone-capped alpha=ke q=1/e", k * e, Variant::kMonotone,
        1.0 / e, false);
  }
  print_bound_row(out, "laminar-monotone", 0.976298652808,
                  laminar_ratio(0.976298652808, Variant::kMonotone));
  print_bound_row(out, "laminar-nonmonotone", 0.023768996072,
                  laminar_ratio(0.023768996072, Variant::kNonmonotone));
  return 0;
}

// ---- invariants ----------------------------------------------------------

struct InvariantsOptions {
  InvariantConfig cfg;
  std::vector<std::string> instances;
  std::uint64_t gen_seed = 1;
};

int cmd_invariants(const InvariantsOptions& opt, std::ostream& out) {
  std::vector<Instance> instances;
  instances.reserve(opt.instances.size());
  for (const std::string& ref : opt.instances) {
    instances.push_back(resolve_instance(ref, opt.gen_seed));
  }
  std::vector<InvariantResult> results =
      check_invariants(opt.cfg, instances);
  require(!results.empty(), Err::kInvalidArgs,
          "unknown suite '" + opt.cfg.suite + "'");
  for (const InvariantResult& r : results) {
    out << r.status << "  " << r.name;
    if (r.status != "skipped") {
      out << "  measured=" << format_sig12(r.measured)
          << " threshold=" << format_sig12(r.threshold);
    }
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "  [" << r.anchor << "]\n";
  }
  return all_passed(results) ? 0 : 1;
}

// ---- verify-matroid / verify-function -------------------------------------

int cmd_verify_matroid(const std::string& ref, std::uint64_t gen_seed,
                       std::ostream& out) {
  Instance inst = resolve_instance(ref, gen_seed);
  AxiomReport rep = verify_axioms(inst.matroid);
  if (rep.ok) {
    out << "ok " << inst.name << ": independent_sets="
        << rep.independent_count
        << " exchange_pairs=" << rep.exchange_pairs_checked << "\n";
    return 0;
  }
  out << "fail " << inst.name << ": " << rep.violation
      << " witness=" << set_to_string(rep.witness_set)
      << " subset=" << set_to_string(rep.witness_subset) << "\n";
  return 1;
}

int cmd_verify_function(const std::string& ref, std::uint64_t gen_seed,
                        std::ostream& out) {
  Instance inst = resolve_instance(ref, gen_seed);
  SubmodularityReport rep = check_submodular(inst.objective);
  bool ok = rep.ok() &&
            (!inst.objective.monotone_declared() || rep.monotone);
  out << (ok ? "ok " : "fail ") << inst.name << ": submodular="
      << (rep.submodular ? "yes" : "no")
      << " monotone=" << (rep.monotone ? "yes" : "no")
      << " non_negative=" << (rep.non_negative ? "yes" : "no")
      << " f_empty=" << format_sig12(rep.value_at_empty);
  if (!ok) {
    out << " violation=" << rep.violation
        << " a=" << set_to_string(rep.witness_a)
        << " b=" << set_to_string(rep.witness_b);
  }
  out << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"matroid secretary reduction driver"};
  app.name("smsp");
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run Monte Carlo trials of a reduction");
  simulate->add_option("--instance", sim.instance,
                       "instance file path or gen:<spec>")
      ->required();
  simulate->add_option("--gen-seed", sim.gen_seed,
                       "seed for gen: instance synthesis");
  simulate->add_option("--algorithm", sim.algorithm,
                       "smsp-online|smsp-simulated|msmsp-online|"
                       "msmsp-simulated|linear");
  simulate->add_option("--linear", sim.linear,
                       "dynkin|dynkin-capped|partition|greedy-online "
                       "(default: instance pairing, then greedy-online)");
  simulate->add_option("--variant", sim.variant, "nonmonotone|monotone");
  simulate->add_option("--p", sim.p,
                       "candidate probability: auto or a real in (0,1)");
  simulate->add_option("--alpha", sim.alpha,
                       "competitive ratio of the linear subroutine");
  simulate->add_option("--q", sim.q, "per-element selection cap");
  simulate->add_option("--trials", sim.trials, "number of trials, >= 1");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--threads", sim.threads,
                       "worker threads, 0 = hardware");
  simulate->add_option("--emit", sim.emit, "jsonl|csv");
  simulate->add_option("--partial-L", sim.partial,
                       "element ids known in advance (linear mode)");

  BoundsOptions bnd;
  CLI::App* bounds =
      app.add_subcommand("bounds", "print guarantee tables or one bound");
  bounds->add_option("--alpha", bnd.alpha, "competitive ratio, >= 1");
  bounds->add_option("--q", bnd.q, "per-element selection cap");
  bounds->add_option("--p", bnd.p, "laminar sampling probability");
  bounds->add_option("--variant", bnd.variant,
                     "nonmonotone|nonmonotone-capped|monotone|"
                     "monotone-capped|monotone-optfilter");
  bounds->add_option("--k", bnd.k, "number of matroids in a union");

  InvariantsOptions inv;
  CLI::App* invariants =
      app.add_subcommand("invariants", "run the invariant check registry");
  invariants->add_option("--suite", inv.cfg.suite,
                         "matroid|function|reduction|coupling|partition|"
                         "dynkin|wrapper|bounds|endtoend|all");
  invariants->add_option("--trials", inv.cfg.trials,
                         "Monte Carlo trials per check");
  invariants->add_option("--seeds", inv.cfg.seeds,
                         "coupling tuples / resampling repetitions");
  invariants->add_option("--seed", inv.cfg.seed, "master seed");
  invariants->add_option("--threads", inv.cfg.threads,
                         "worker threads, 0 = hardware");
  invariants->add_option("--alpha-scan-limit", inv.cfg.alpha_scan_limit,
                         "largest n in the class-rule ratio scan");
  invariants->add_option("--instance", inv.instances,
                         "replace the built-in oracle fixtures");
  invariants->add_option("--gen-seed", inv.gen_seed,
                         "seed for gen: instance synthesis");

  std::string vm_ref;
  std::uint64_t vm_gen_seed = 1;
  CLI::App* vmat = app.add_subcommand(
      "verify-matroid", "exhaustively check the independence oracle axioms");
  vmat->add_option("--instance", vm_ref, "instance file path or gen:<spec>")
      ->required();
  vmat->add_option("--gen-seed", vm_gen_seed,
                   "seed for gen: instance synthesis");

  std::string vf_ref;
  std::uint64_t vf_gen_seed = 1;
  CLI::App* vfun = app.add_subcommand(
      "verify-function",
      "exhaustively check submodularity and declared properties");
  vfun->add_option("--instance", vf_ref, "instance file path or gen:<spec>")
      ->required();
  vfun->add_option("--gen-seed", vf_gen_seed,
                   "seed for gen: instance synthesis");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (bounds->parsed()) return cmd_bounds(bnd, out);
    if (invariants->parsed()) return cmd_invariants(inv, out);
    if (vmat->parsed()) return cmd_verify_matroid(vm_ref, vm_gen_seed, out);
    if (vfun->parsed()) return cmd_verify_function(vf_ref, vf_gen_seed, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace smsp
