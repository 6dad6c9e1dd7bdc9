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

#include "smsp/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smsp/error.hpp"

namespace smsp {
namespace {

constexpr double kValueTolerance = 1e-9;

void check_weights(const std::vector<double>& w, int n) {
  require(static_cast<int>(w.size()) == n, Err::kInvalidArgs,
          "weight vector must cover every element");
  for (double x : w) {
    require(std::isfinite(x), Err::kInvalidArgs, "non-finite weight");
    require(x >= 0.0, Err::kNegativeWeight, "weights must be non-negative");
  }
}

std::function<double(const ElementSet&)> make_eval(const ObjectiveSpec& spec,
                                                   int n) {
  if (const auto* lin = std::get_if<LinearObjectiveSpec>(&spec)) {
    check_weights(lin->weights, n);
    auto w = lin->weights;
    return [w = std::move(w)](const ElementSet& s) {
      double total = 0.0;
      for (Element u : s) total += w[u];
      return total;
    };
  }
  if (const auto* cov = std::get_if<CoverageObjectiveSpec>(&spec)) {
    require(static_cast<int>(cov->covers.size()) == n, Err::kInvalidArgs,
            "covers must assign a set to every element");
    int items = 0;
    for (const auto& c : cov->covers) {
      for (int item : c) {
        require(item >= 0, Err::kInvalidArgs, "negative item id");
        items = std::max(items, item + 1);
      }
    }
    std::vector<double> iw = cov->item_weights;
    if (iw.empty()) iw.assign(items, 1.0);
    require(static_cast<int>(iw.size()) >= items, Err::kInvalidArgs,
            "item weight missing for a covered item");
    for (double x : iw) {
      require(x >= 0.0, Err::kNegativeWeight,
              "item weights must be non-negative");
    }
    auto covers = cov->covers;
    return [covers = std::move(covers), iw = std::move(iw)](const ElementSet& s) {
      std::vector<char> seen(iw.size(), 0);
      double total = 0.0;
      for (Element u : s) {
        for (int item : covers[u]) {
          if (!seen[item]) {
            seen[item] = 1;
            total += iw[item];
          }
        }
      }
      return total;
    };
  }
  if (const auto* mw = std::get_if<MaxWeightObjectiveSpec>(&spec)) {
    check_weights(mw->weights, n);
    auto w = mw->weights;
    return [w = std::move(w)](const ElementSet& s) {
      double best = 0.0;
      for (Element u : s) best = std::max(best, w[u]);
      return best;
    };
  }
  const auto& wr = std::get<WeightedRankObjectiveSpec>(spec);
  check_weights(wr.weights, n);
  auto inner = std::make_shared<Matroid>(wr.inner, n);
  auto w = wr.weights;
  return [inner, w = std::move(w)](const ElementSet& s) {
    // Greedy by descending weight is exact for modular weights.
    std::vector<Element> order(s.begin(), s.end());
    std::sort(order.begin(), order.end(), [&](Element a, Element b) {
      if (w[a] != w[b]) return w[a] > w[b];
      return a < b;
    });
    ElementSet acc;
    double total = 0.0;
    for (Element u : order) {
      if (inner->is_independent(acc.with(u))) {
        acc.insert(u);
        total += w[u];
      }
    }
    return total;
  };
}

}  // namespace

Objective::Objective(const ObjectiveSpec& spec, int n, double shift) {
  require(n >= 0, Err::kInvalidArgs, "negative ground size");
  require(std::isfinite(shift) && shift >= 0.0, Err::kNegativeWeight,
          "shift must be non-negative");
  n_ = n;
  shift_ = shift;
  monotone_ = true;
  spec_ = spec;
  eval_ = make_eval(spec, n);
  calls_ = std::make_shared<std::atomic<std::uint64_t>>(0);
}

Objective Objective::custom(int n, std::function<double(const ElementSet&)> f,
                            bool monotone, double shift) {
  require(n >= 0, Err::kInvalidArgs, "negative ground size");
  Objective o;
  o.n_ = n;
  o.shift_ = shift;
  o.monotone_ = monotone;
  o.eval_ = std::move(f);
  o.calls_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  return o;
}

double Objective::value(const ElementSet& s) const {
  for (Element u : s) {
    require(u >= 0 && u < n_, Err::kUnknownElement,
            "element outside the objective's ground set");
  }
  calls_->fetch_add(1, std::memory_order_relaxed);
  return eval_(s) + shift_;
}

double Objective::marginal(Element u, const ElementSet& s) const {
  if (s.contains(u)) return 0.0;
  return value(s.with(u)) - value(s);
}

double convolve_fw(const Objective& f, const std::vector<double>& w,
                   const ElementSet& s) {
  require(static_cast<int>(w.size()) >= f.n(), Err::kInvalidArgs,
          "weight vector must cover every element");
  require(s.size() <= 20, Err::kSetTooLargeForExactConvolution,
          "exact convolution supports at most 20 elements");
  const auto& elems = s.elements();
  const int k = s.size();
  double total_w = 0.0;
  for (Element u : elems) total_w += w[u];

  double best = std::numeric_limits<double>::infinity();
  std::vector<Element> buffer;
  buffer.reserve(k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    buffer.clear();
    double w_inside = 0.0;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        buffer.push_back(elems[i]);
        w_inside += w[elems[i]];
      }
    }
    double candidate = f.value(ElementSet(buffer)) + (total_w - w_inside);
    best = std::min(best, candidate);
  }
  return best;
}

SubmodularityReport check_submodular(
    int n, const std::function<double(const ElementSet&)>& f) {
  require(n >= 0 && n <= 16, Err::kGroundTooLarge,
          "exhaustive submodularity check supports at most 16 elements");
  SubmodularityReport report;
  const std::uint64_t total = std::uint64_t{1} << n;

  std::vector<double> val(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    val[m] = f(ElementSet::from_mask(m));
  }
  report.value_at_empty = val[0];

  report.non_negative = true;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (val[m] < -kValueTolerance) {
      report.non_negative = false;
      report.violation = "non-negative";
      report.witness_a = ElementSet::from_mask(m);
      break;
    }
  }

  report.monotone = true;
  for (std::uint64_t m = 0; m < total && report.monotone; ++m) {
    for (int e = 0; e < n; ++e) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if (m & bit) continue;
      if (val[m | bit] < val[m] - kValueTolerance) {
        report.monotone = false;
        if (report.violation.empty()) {
          report.violation = "monotone";
          report.witness_a = ElementSet::from_mask(m);
          report.witness_b = ElementSet::from_mask(m | bit);
        }
        break;
      }
    }
  }

  // Local characterization, equivalent to the pairwise one:
  // f(S+u) + f(S+v) >= f(S+u+v) + f(S) for all S and u != v outside S.
  report.submodular = true;
  for (std::uint64_t s = 0; s < total && report.submodular; ++s) {
    for (int u = 0; u < n && report.submodular; ++u) {
      std::uint64_t bu = std::uint64_t{1} << u;
      if (s & bu) continue;
      for (int v = u + 1; v < n; ++v) {
        std::uint64_t bv = std::uint64_t{1} << v;
        if (s & bv) continue;
        if (val[s | bu] + val[s | bv] <
            val[s | bu | bv] + val[s] - kValueTolerance) {
          report.submodular = false;
          report.violation = "submodular";
          report.witness_a = ElementSet::from_mask(s | bu);
          report.witness_b = ElementSet::from_mask(s | bv);
          break;
        }
      }
    }
  }
  return report;
}

SubmodularityReport check_submodular(const Objective& f) {
  return check_submodular(
      f.n(), [&](const ElementSet& s) { return f.value(s); });
}

GreedyTrace greedy(const Objective& f, const Matroid& m,
                   const ElementSet& universe) {
  GreedyTrace trace;
  std::vector<Element> remaining(universe.begin(), universe.end());
  double current = f.value(trace.result);
  while (!remaining.empty()) {
    // Largest marginal, smallest id on ties; remaining is kept sorted.
    int best_idx = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      double g = f.value(trace.result.with(remaining[i])) - current;
      if (g > best_gain) {
        best_gain = g;
        best_idx = static_cast<int>(i);
      }
    }
    Element u = remaining[best_idx];
    remaining.erase(remaining.begin() + best_idx);
    if (best_gain >= 0.0 && m.is_independent(trace.result.with(u))) {
      trace.result.insert(u);
      trace.order.push_back(u);
      trace.gain.push_back(best_gain);
      current += best_gain;
    }
  }
  return trace;
}

OptResult offline_opt(const Objective& f, const Matroid& m,
                      const ElementSet& universe) {
  require(universe.size() <= 20, Err::kGroundTooLarge,
          "exhaustive search supports at most 20 elements");
  OptResult best;
  best.set = ElementSet{};
  best.value = f.value(best.set);
  const int k = universe.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    ElementSet s = ElementSet::from_mask(mask, universe);
    if (!m.is_independent(s)) continue;
    double v = f.value(s);
    if (v > best.value) {
      best.value = v;
      best.set = s;
    }
  }
  return best;
}

OptResult max_weight_independent(const std::vector<double>& w,
                                 const Matroid& m,
                                 const ElementSet& universe) {
  std::vector<Element> order(universe.begin(), universe.end());
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return a < b;
  });
  OptResult res;
  for (Element u : order) {
    if (w[u] <= 0.0) continue;
    if (m.is_independent(res.set.with(u))) {
      res.set.insert(u);
      res.value += w[u];
    }
  }
  return res;
}

}  // namespace smsp
