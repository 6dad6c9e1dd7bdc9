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

#include "smsp/harness.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <utility>

#include "smsp/error.hpp"
#include "smsp/linear_msp.hpp"

namespace smsp {
namespace {

double sum_over(const std::vector<double>& w, const ElementSet& s) {
  double total = 0.0;
  for (Element u : s) total += w[u];
  return total;
}

TrialRow row_from_log(const ExperimentConfig& cfg, const Instance& instance,
                      const TrialLog& log) {
  TrialRow row;
  row.x = log.x;
  row.learn_size = log.learn.size();
  row.greedy_size = log.greedy_set.size();
  row.candidate_size = log.candidates.size();
  row.zero_size = log.zero_candidates.size();
  row.output_size = log.output.size();
  row.f_greedy = log.f_greedy;
  row.w_greedy = log.w_greedy;
  row.w_candidates = log.w_candidates;
  row.f_output = log.f_output;
  row.w_output = sum_over(log.w, log.output);
  row.optw_candidates =
      max_weight_independent(log.w, instance.matroid, log.candidates).value;
  if (cfg.with_convolution) {
    row.fw_greedy = convolve_fw(instance.objective, log.w, log.greedy_set);
    row.fw_candidates =
        convolve_fw(instance.objective, log.w, log.candidates);
    row.fw_output = convolve_fw(instance.objective, log.w, log.output);
  }
  return row;
}

// Subroutine-only trial: weights are the singleton marginals, the
// elements outside cfg.partial_known arrive in uniform random order,
// and the known elements reach the subroutine through the adapter.
TrialLog linear_only_trial(const ExperimentConfig& cfg,
                           const Instance& instance,
                           const std::vector<double>& base_w,
                           const LinearFactory& linear,
                           const RandomTape& tape) {
  const ElementSet& ground = instance.matroid.ground();
  const int total = ground.size();
  TrialLog log;
  log.w = base_w;
  log.learn = cfg.partial_known;
  log.x = log.learn.size();
  log.candidates = set_difference(ground, log.learn);

  std::vector<Element> arrival = log.candidates.elements();
  Rng arrival_rng = tape.stream(Stream::kArrival);
  arrival_rng.shuffle(arrival);

  auto inner = linear(LinearContext{total, &instance.matroid,
                                    tape.stream_seed(Stream::kLinear)});
  PartialMspWrapper wrapper(std::move(inner), log.learn, total,
                            tape.stream_seed(Stream::kInterleave));
  for (Element u : arrival) wrapper.on_arrival(u, base_w[u]);
  log.subroutine_out = wrapper.finish();
  log.output = set_intersect(log.subroutine_out, log.candidates);

  log.f_greedy = instance.objective.value(log.greedy_set);
  log.w_greedy = 0.0;
  log.w_candidates = sum_over(log.w, log.candidates);
  log.f_output = instance.objective.value(log.output);
  return log;
}

TrialLog run_one(const ExperimentConfig& cfg, const Instance& instance,
                 const std::vector<double>& base_w,
                 const LinearFactory& linear, double p,
                 const RandomTape& tape) {
  ReductionConfig rcfg{cfg.variant, p};
  switch (cfg.algorithm) {
    case AlgorithmKey::kSmspOnline:
    case AlgorithmKey::kMsmspOnline: {
      std::vector<Element> arrival = instance.matroid.ground().elements();
      Rng arrival_rng = tape.stream(Stream::kArrival);
      arrival_rng.shuffle(arrival);
      return cfg.algorithm == AlgorithmKey::kSmspOnline
                 ? smsp_online(rcfg, instance, arrival, linear, tape)
                 : msmsp_online(rcfg, instance, arrival, linear, tape);
    }
    case AlgorithmKey::kSmspSimulated:
      return smsp_simulated(rcfg, instance, linear, tape);
    case AlgorithmKey::kMsmspSimulated:
      return msmsp_simulated(rcfg, instance, linear, tape);
    case AlgorithmKey::kLinearOnly:
      return linear_only_trial(cfg, instance, base_w, linear, tape);
  }
  fail(Err::kInvalidArgs, "unknown algorithm key");
}

void summarize_into(TrialAggregate& agg, const ExperimentConfig& cfg) {
  auto add = [&](const std::string& name, auto getter) {
    std::vector<double> values(agg.rows.size());
    for (std::size_t i = 0; i < agg.rows.size(); ++i) {
      values[i] = static_cast<double>(getter(agg.rows[i]));
    }
    agg.stats[name] = summarize(values);
  };
  add("f_output", [](const TrialRow& r) { return r.f_output; });
  add("f_greedy", [](const TrialRow& r) { return r.f_greedy; });
  add("w_greedy", [](const TrialRow& r) { return r.w_greedy; });
  add("w_candidates", [](const TrialRow& r) { return r.w_candidates; });
  add("w_output", [](const TrialRow& r) { return r.w_output; });
  add("optw_candidates",
      [](const TrialRow& r) { return r.optw_candidates; });
  add("learn_size", [](const TrialRow& r) { return r.learn_size; });
  add("output_size", [](const TrialRow& r) { return r.output_size; });
  if (cfg.with_convolution) {
    add("fw_greedy", [](const TrialRow& r) { return r.fw_greedy; });
    add("fw_candidates", [](const TrialRow& r) { return r.fw_candidates; });
    add("fw_output", [](const TrialRow& r) { return r.fw_output; });
  }
}

}  // namespace

LinearFactory make_linear(const std::string& key, const Instance& instance) {
  if (key == "dynkin") {
    return [](const LinearContext& ctx) { return make_dynkin(ctx, false); };
  }
  if (key == "dynkin-capped") {
    return [](const LinearContext& ctx) { return make_dynkin(ctx, true); };
  }
  if (key == "partition") {
    std::vector<int> class_of = instance.matroid.partition_classes();
    return [class_of](const LinearContext& ctx) {
      return make_partition_msp(ctx, class_of);
    };
  }
  if (key == "greedy-online") {
    return [](const LinearContext& ctx) { return make_greedy_online(ctx); };
  }
  fail(Err::kInvalidArgs, "unknown subroutine key: " + key);
}

std::optional<AlgorithmKey> algorithm_from_key(const std::string& key) {
  if (key == "smsp-online") return AlgorithmKey::kSmspOnline;
  if (key == "smsp-simulated") return AlgorithmKey::kSmspSimulated;
  if (key == "msmsp-online") return AlgorithmKey::kMsmspOnline;
  if (key == "msmsp-simulated") return AlgorithmKey::kMsmspSimulated;
  if (key == "linear") return AlgorithmKey::kLinearOnly;
  return std::nullopt;
}

std::string algorithm_key_name(AlgorithmKey a) {
  switch (a) {
    case AlgorithmKey::kSmspOnline:
      return "smsp-online";
    case AlgorithmKey::kSmspSimulated:
      return "smsp-simulated";
    case AlgorithmKey::kMsmspOnline:
      return "msmsp-online";
    case AlgorithmKey::kMsmspSimulated:
      return "msmsp-simulated";
    case AlgorithmKey::kLinearOnly:
      return "linear";
  }
  return "unknown";
}

double resolve_p(const ExperimentConfig& cfg) {
  if (cfg.p.has_value()) {
    require(*cfg.p > 0.0 && *cfg.p < 1.0, Err::kInvalidProbability,
            "p must lie in (0, 1)");
    return *cfg.p;
  }
  return choose_p(cfg.alpha, cfg.variant, cfg.q);
}

TrialAggregate run_trials(const ExperimentConfig& cfg,
                          const Instance& instance) {
  require(cfg.trials >= 1, Err::kInvalidArgs, "trials must be at least 1");
  const bool monotone_key = cfg.algorithm == AlgorithmKey::kMsmspOnline ||
                            cfg.algorithm == AlgorithmKey::kMsmspSimulated;
  const bool reduction_key = cfg.algorithm != AlgorithmKey::kLinearOnly;
  if (reduction_key) {
    require(cfg.variant ==
                (monotone_key ? Variant::kMonotone : Variant::kNonmonotone),
            Err::kVariantMismatch, "variant does not match the algorithm");
  }
  const double p = reduction_key ? resolve_p(cfg) : 0.0;

  std::vector<double> base_w;
  if (cfg.algorithm == AlgorithmKey::kLinearOnly) {
    base_w.assign(instance.n, 0.0);
    for (Element u : instance.matroid.ground()) {
      base_w[u] = instance.objective.marginal(u, ElementSet{});
    }
    require(set_difference(cfg.partial_known, instance.matroid.ground())
                .empty(),
            Err::kUnknownElement,
            "partial-known elements must belong to the ground set");
  }

  LinearFactory linear =
      cfg.custom_linear ? cfg.custom_linear : make_linear(cfg.linear, instance);
  const RandomTape master(cfg.seed);

  TrialAggregate agg;
  agg.trials = cfg.trials;
  agg.rows.resize(cfg.trials);
  agg.accept_freq.assign(instance.n, 0.0);

  int threads = cfg.threads;
  if (threads <= 0) {
    threads = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<int>(
      std::min<long long>(threads, cfg.trials));

  std::vector<std::vector<long long>> counts(
      threads, std::vector<long long>(instance.n, 0));
  std::vector<std::pair<long long, std::exception_ptr>> errors(
      threads, {-1, nullptr});

  auto worker = [&](int t, long long begin, long long end) {
    for (long long i = begin; i < end; ++i) {
      try {
        TrialLog log =
            run_one(cfg, instance, base_w, linear, p, master.derived(i));
        agg.rows[i] = row_from_log(cfg, instance, log);
        for (Element u : log.output) ++counts[t][u];
      } catch (...) {
        errors[t] = {i, std::current_exception()};
        return;
      }
    }
  };

  if (threads == 1) {
    worker(0, 0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (cfg.trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long begin = t * chunk;
      long long end = std::min<long long>(begin + chunk, cfg.trials);
      if (begin >= end) break;
      pool.emplace_back(worker, t, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  for (const auto& [index, err] : errors) {
    if (err == nullptr) continue;
    try {
      std::rethrow_exception(err);
    } catch (const Error& e) {
      fail(e.code(), "trial " + std::to_string(index) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(index) + ": " +
                               e.what());
    }
  }

  for (int u = 0; u < instance.n; ++u) {
    long long total = 0;
    for (int t = 0; t < threads; ++t) total += counts[t][u];
    agg.accept_freq[u] =
        static_cast<double>(total) / static_cast<double>(cfg.trials);
  }
  summarize_into(agg, cfg);
  return agg;
}

}  // namespace smsp
