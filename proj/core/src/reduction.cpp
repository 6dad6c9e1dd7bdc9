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

#include "smsp/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "smsp/error.hpp"
#include "smsp/linear_msp.hpp"

namespace smsp {
namespace {

constexpr double kE = std::numbers::e;

void check_probability(double p) {
  require(p > 0.0 && p < 1.0, Err::kInvalidProbability,
          "acceptance probability must lie in (0, 1)");
}

void check_variant(const ReductionConfig& cfg, const Instance& instance) {
  if (cfg.variant == Variant::kMonotone) {
    require(instance.objective.monotone_declared(), Err::kVariantMismatch,
            "monotone variant needs a monotone objective");
  }
}

// Replays greedy on M + u and reports u's insertion gain when greedy
// takes it. Greedy's path through M is deterministic, so only u's fate
// is needed; the scan stops as soon as u is resolved.
std::optional<double> greedy_admits(const Objective& f, const Matroid& m,
                                    const ElementSet& greedy_set, Element u) {
  std::vector<Element> remaining(greedy_set.begin(), greedy_set.end());
  remaining.insert(
      std::lower_bound(remaining.begin(), remaining.end(), u), u);
  ElementSet acc;
  double current = f.value(acc);
  while (!remaining.empty()) {
    int best_idx = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      double g = f.value(acc.with(remaining[i])) - current;
      if (g > best_gain) {
        best_gain = g;
        best_idx = static_cast<int>(i);
      }
    }
    Element next = remaining[best_idx];
    remaining.erase(remaining.begin() + best_idx);
    bool take = best_gain >= 0.0 && m.is_independent(acc.with(next));
    if (next == u) {
      if (take) return best_gain;
      return std::nullopt;
    }
    if (take) {
      acc.insert(next);
      current += best_gain;
    }
  }
  return std::nullopt;
}

void finalize_log(TrialLog& log, const Instance& instance) {
  log.f_greedy = instance.objective.value(log.greedy_set);
  log.w_greedy = 0.0;
  for (Element u : log.greedy_set) log.w_greedy += log.w[u];
  log.w_candidates = 0.0;
  for (Element u : log.candidates) log.w_candidates += log.w[u];
  log.output = set_intersect(log.subroutine_out, log.candidates);
  log.f_output = instance.objective.value(log.output);
}

// Coupled runs replace the coin streams by membership sets and share
// the subroutine's randomness.
struct Coupling {
  const ElementSet* learn = nullptr;
  const ElementSet* flips = nullptr;
  std::uint64_t linear_seed = 0;
};

TrialLog run_online(const ReductionConfig& cfg, const Instance& instance,
                    std::span<const Element> arrival,
                    const LinearFactory& linear, const RandomTape& tape,
                    const Coupling* coupling) {
  check_probability(cfg.p);
  check_variant(cfg, instance);
  const int n = instance.n;
  const int m_size = instance.matroid.ground().size();
  const Objective& f = instance.objective;
  const Matroid& m = instance.matroid;

  TrialLog log;
  log.w.assign(n, 0.0);

  std::vector<Element> later;
  if (coupling == nullptr) {
    require(static_cast<int>(arrival.size()) == m_size, Err::kInvalidArgs,
            "arrival order must cover the ground set exactly once");
    Rng learn_rng = tape.stream(Stream::kLearning);
    long long x = cfg.variant == Variant::kNonmonotone
                      ? learn_rng.binomial_half(m_size)
                      : learn_rng.binomial(m_size, cfg.p);
    log.x = x;
    for (long long i = 0; i < x; ++i) log.learn.insert(arrival[i]);
    later.assign(arrival.begin() + x, arrival.end());
  } else {
    log.learn = *coupling->learn;
    log.x = log.learn.size();
    later.assign(arrival.begin(), arrival.end());
  }

  GreedyTrace trace = greedy(f, m, log.learn);
  log.greedy_set = trace.result;
  for (std::size_t i = 0; i < trace.order.size(); ++i) {
    log.w[trace.order[i]] = trace.gain[i];
  }

  RandomTape sub_tape =
      coupling ? RandomTape(coupling->linear_seed) : tape;
  auto inner = linear(LinearContext{
      m_size, &instance.matroid, sub_tape.stream_seed(Stream::kLinear)});
  PartialMspWrapper wrapper(std::move(inner), log.learn, m_size,
                            sub_tape.stream_seed(Stream::kInterleave));

  Rng coin_rng = tape.stream(Stream::kCoins);
  for (Element u : later) {
    double wu = 0.0;
    std::optional<double> gain = greedy_admits(f, m, log.greedy_set, u);
    bool candidate = false;
    if (gain.has_value()) {
      if (cfg.variant == Variant::kMonotone) {
        candidate = true;
      } else if (coupling != nullptr) {
        candidate = coupling->flips->contains(u);
      } else {
        candidate = coin_rng.bernoulli(cfg.p);
      }
    }
    if (candidate) {
      log.candidates.insert(u);
      wu = *gain;
      log.w[u] = wu;
    } else {
      log.zero_candidates.insert(u);
    }
    wrapper.on_arrival(u, wu);
  }

  log.subroutine_out = wrapper.finish();
  finalize_log(log, instance);
  return log;
}

TrialLog run_simulated(const ReductionConfig& cfg, const Instance& instance,
                       std::span<const Element> pi,
                       const LinearFactory& linear, const RandomTape& tape,
                       const Coupling* coupling) {
  check_probability(cfg.p);
  check_variant(cfg, instance);
  const int n = instance.n;
  const int m_size = instance.matroid.ground().size();
  const Objective& f = instance.objective;
  const Matroid& m = instance.matroid;

  TrialLog log;
  log.w.assign(n, 0.0);

  Rng coin_rng = tape.stream(Stream::kCoins);
  std::vector<Element> remaining(instance.matroid.ground().begin(),
                                 instance.matroid.ground().end());
  double current = f.value(ElementSet{});
  while (!remaining.empty()) {
    // Greedy processing order: largest marginal against the current M,
    // smallest id on ties.
    int best_idx = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      double g = f.value(log.greedy_set.with(remaining[i])) - current;
      if (g > best_gain) {
        best_gain = g;
        best_idx = static_cast<int>(i);
      }
    }
    Element u = remaining[best_idx];
    remaining.erase(remaining.begin() + best_idx);

    bool feasible = m.is_independent(log.greedy_set.with(u));
    if (cfg.variant == Variant::kNonmonotone) {
      if (feasible && best_gain >= 0.0) {
        bool to_m = coupling ? coupling->learn->contains(u)
                             : coin_rng.bernoulli(0.5);
        if (to_m) {
          log.greedy_set.insert(u);
          log.w[u] = best_gain;
          current += best_gain;
        } else {
          bool to_n = coupling ? coupling->flips->contains(u)
                               : coin_rng.bernoulli(cfg.p);
          if (to_n) {
            log.candidates.insert(u);
            log.w[u] = best_gain;
          } else {
            log.zero_candidates.insert(u);
          }
        }
      } else {
        bool to_n0 = coupling ? !coupling->learn->contains(u)
                              : coin_rng.bernoulli(0.5);
        if (to_n0) log.zero_candidates.insert(u);
      }
    } else {
      if (feasible) {
        bool to_m = coupling ? coupling->learn->contains(u)
                             : coin_rng.bernoulli(cfg.p);
        if (to_m) {
          log.greedy_set.insert(u);
          log.w[u] = best_gain;
          current += best_gain;
        } else {
          log.candidates.insert(u);
          log.w[u] = best_gain;
        }
      } else {
        bool to_n0 = coupling ? !coupling->learn->contains(u)
                              : !coin_rng.bernoulli(cfg.p);
        if (to_n0) log.zero_candidates.insert(u);
      }
    }
  }

  log.learn = set_difference(
      set_difference(instance.matroid.ground(), log.candidates),
      log.zero_candidates);
  log.x = log.learn.size();

  // The subroutine consumes the candidate pool in uniform random order
  // (the shared order pi when coupled), wrapped exactly like the online
  // run so both see identically distributed full streams.
  std::vector<Element> stream;
  if (coupling != nullptr) {
    stream.assign(pi.begin(), pi.end());
  } else {
    ElementSet pool = set_union(log.candidates, log.zero_candidates);
    stream.assign(pool.begin(), pool.end());
    Rng shuffle_rng = tape.stream(Stream::kShuffle);
    shuffle_rng.shuffle(stream);
  }

  RandomTape sub_tape =
      coupling ? RandomTape(coupling->linear_seed) : tape;
  auto inner = linear(LinearContext{
      m_size, &instance.matroid, sub_tape.stream_seed(Stream::kLinear)});
  PartialMspWrapper wrapper(std::move(inner), log.learn, m_size,
                            sub_tape.stream_seed(Stream::kInterleave));
  for (Element u : stream) wrapper.on_arrival(u, log.w[u]);
  log.subroutine_out = wrapper.finish();

  finalize_log(log, instance);
  return log;
}

}  // namespace

TrialLog smsp_online(const ReductionConfig& cfg, const Instance& instance,
                     std::span<const Element> arrival,
                     const LinearFactory& linear, const RandomTape& tape) {
  require(cfg.variant == Variant::kNonmonotone, Err::kVariantMismatch,
          "nonmonotone entry point");
  return run_online(cfg, instance, arrival, linear, tape, nullptr);
}

TrialLog smsp_simulated(const ReductionConfig& cfg, const Instance& instance,
                        const LinearFactory& linear, const RandomTape& tape) {
  require(cfg.variant == Variant::kNonmonotone, Err::kVariantMismatch,
          "nonmonotone entry point");
  return run_simulated(cfg, instance, {}, linear, tape, nullptr);
}

TrialLog msmsp_online(const ReductionConfig& cfg, const Instance& instance,
                      std::span<const Element> arrival,
                      const LinearFactory& linear, const RandomTape& tape) {
  require(cfg.variant == Variant::kMonotone, Err::kVariantMismatch,
          "monotone entry point");
  return run_online(cfg, instance, arrival, linear, tape, nullptr);
}

TrialLog msmsp_simulated(const ReductionConfig& cfg, const Instance& instance,
                         const LinearFactory& linear, const RandomTape& tape) {
  require(cfg.variant == Variant::kMonotone, Err::kVariantMismatch,
          "monotone entry point");
  return run_simulated(cfg, instance, {}, linear, tape, nullptr);
}

namespace {

template <typename T>
bool diff_field(const T& a, const T& b, const char* name, std::string* out) {
  if (a == b) return false;
  *out = name;
  return true;
}

}  // namespace

CoupledResult coupled_pair(const ElementSet& learn, const ElementSet& flips,
                           std::span<const Element> pi, double p,
                           const Instance& instance,
                           const LinearFactory& linear,
                           std::uint64_t linear_seed) {
  ElementSet pi_set{std::vector<Element>(pi.begin(), pi.end())};
  require(static_cast<int>(pi.size()) ==
                  instance.matroid.ground().size() - learn.size() &&
              pi_set == set_difference(instance.matroid.ground(), learn),
          Err::kInvalidArgs,
          "pi must order the elements outside the learning set");

  ReductionConfig cfg{Variant::kNonmonotone, p};
  Coupling coupling{&learn, &flips, linear_seed};
  RandomTape unused(0);

  CoupledResult res;
  res.online = run_online(cfg, instance, pi, linear, unused, &coupling);
  res.simulated =
      run_simulated(cfg, instance, pi, linear, unused, &coupling);

  const TrialLog& a = res.online;
  const TrialLog& b = res.simulated;
  res.identical =
      !(diff_field(a.greedy_set, b.greedy_set, "M", &res.mismatch) ||
        diff_field(a.candidates, b.candidates, "N", &res.mismatch) ||
        diff_field(a.zero_candidates, b.zero_candidates, "N0",
                   &res.mismatch) ||
        diff_field(a.w, b.w, "w", &res.mismatch) ||
        diff_field(a.subroutine_out, b.subroutine_out, "Q", &res.mismatch) ||
        diff_field(a.output, b.output, "output", &res.mismatch));
  return res;
}

double choose_p(double alpha, Variant variant, std::optional<double> q,
                bool opt_filter) {
  require(alpha >= 1.0, Err::kInvalidAlpha, "alpha must be at least 1");
  if (q.has_value()) {
    require(*q > 0.0 && *q <= 1.0, Err::kInvalidProbability,
            "cap must lie in (0, 1]");
    // Slack admits q and alpha quoted to 9 significant digits.
    require(*q >= 1.0 / alpha - 1e-9, Err::kInvalidArgs,
            "a q-capped alpha-competitive subroutine needs q >= 1/alpha");
  }
  if (variant == Variant::kNonmonotone) {
    require(!opt_filter, Err::kInvalidArgs,
            "optimum filtering applies to the monotone variant");
    if (q.has_value()) return 1.0 / (3.0 * alpha * *q);
    return 1.0 / (3.0 * alpha);
  }
  if (opt_filter) return 0.75;
  return (2.0 * alpha + 1.0) / (2.0 * (alpha + 1.0));
}

double ratio_bound(double alpha, Variant variant, int k,
                   std::optional<double> q, bool opt_filter) {
  require(alpha >= 1.0, Err::kInvalidAlpha, "alpha must be at least 1");
  require(k >= 1, Err::kInvalidArgs, "k must be at least 1");
  if (q.has_value()) {
    require(*q > 0.0 && *q <= 1.0, Err::kInvalidProbability,
            "cap must lie in (0, 1]");
    require(k == 1, Err::kInvalidArgs, "cap and k-union are exclusive");
  }
  if (variant == Variant::kNonmonotone) {
    require(!opt_filter, Err::kInvalidArgs,
            "optimum filtering applies to the monotone variant");
    if (q.has_value()) return 24.0 * alpha * (3.0 * *q * alpha + 1.0);
    return 24.0 * k * alpha * (3.0 * alpha + 1.0);
  }
  if (opt_filter) {
    require(!q.has_value() && k == 1, Err::kInvalidArgs,
            "optimum filtering has no cap or k parameter");
    return 16.0 * alpha;
  }
  if (q.has_value()) return 8.0 * alpha * (alpha * *q + 1.0);
  return 8.0 * k * alpha * (alpha + 1.0);
}

double laminar_ratio(double p, Variant variant) {
  check_probability(p);
  if (variant == Variant::kMonotone) {
    double beta = 2.0 * kE * (1.0 - p);
    require(beta < 1.0, Err::kBetaOutOfRange,
            "needs 2e(1-p) < 1");
    double value =
        (p / 2.0) * ((1.0 - p) -
                     4.0 * kE * (1.0 - p) * (1.0 - p) /
                         (p * std::pow(1.0 - 2.0 * kE * (1.0 - p), 3)));
    require(value > 0.0, Err::kBetaOutOfRange,
            "guarantee is vacuous at this p");
    return 1.0 / value;
  }
  double t = 1.0 - 1.0 / (1.0 + p);
  double beta = 2.0 * kE * t;
  require(beta < 1.0, Err::kBetaOutOfRange,
          "needs 2e(1 - 1/(1+p)) < 1");
  double value = (p / 8.0) * ((1.0 - p) / (1.0 + p) -
                              4.0 * kE * t /
                                  std::pow(1.0 - 2.0 * kE * t, 3));
  require(value > 0.0, Err::kBetaOutOfRange,
          "guarantee is vacuous at this p");
  return 1.0 / value;
}

}  // namespace smsp
