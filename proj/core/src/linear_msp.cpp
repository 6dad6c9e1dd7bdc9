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

#include "smsp/linear_msp.hpp"

#include <cmath>
#include <numbers>

#include "smsp/error.hpp"

namespace smsp {
namespace {

constexpr double kE = std::numbers::e;

// Lexicographic (weight, id) order; makes every comparison strict.
struct LexWeight {
  double w = -1.0;
  Element id = -1;
  bool beats(const LexWeight& other) const {
    if (w != other.w) return w > other.w;
    return id > other.id;
  }
};

class DynkinAlgorithm : public OnlineAlgorithm {
 public:
  DynkinAlgorithm(const LinearContext& ctx, bool capped)
      : n_(ctx.n), matroid_(ctx.matroid), capped_(capped), rng_(ctx.seed) {
    require(n_ >= 0, Err::kInvalidArgs, "negative stream length");
    if (n_ >= 1) {
      DynkinChoice choice = dynkin_best(n_);
      r_ = choice.r;
      keep_probability_ = capped_ ? 1.0 / (kE * choice.p) : 1.0;
    }
  }

  bool on_arrival(Element u, double weight) override {
    bool suppressed = weight < 0.0;
    if (weight < 0.0) weight = 0.0;
    ++position_;
    LexWeight lex{weight, u};
    if (position_ <= r_ - 1) {
      if (!has_best_ || lex.beats(best_)) {
        best_ = lex;
        has_best_ = true;
      }
      return false;
    }
    if (done_) return false;
    if (has_best_ && !lex.beats(best_)) return false;
    // First record after the observation phase: the single tentative
    // selection. With the cap, a failed coin ends the run unselected.
    done_ = true;
    if (capped_ && !rng_.bernoulli(keep_probability_)) return false;
    if (suppressed) return false;
    if (matroid_ != nullptr && !matroid_->is_independent(ElementSet{u})) {
      return false;
    }
    selected_.insert(u);
    return true;
  }

  ElementSet finish() override { return selected_; }

 private:
  int n_;
  const Matroid* matroid_;
  bool capped_;
  Rng rng_;
  int r_ = 1;
  double keep_probability_ = 1.0;
  int position_ = 0;
  bool has_best_ = false;
  LexWeight best_;
  bool done_ = false;
  ElementSet selected_;
};

class PartitionMspAlgorithm : public OnlineAlgorithm {
 public:
  PartitionMspAlgorithm(const LinearContext& ctx, std::vector<int> class_of)
      : n_(ctx.n), class_of_(std::move(class_of)), rng_(ctx.seed) {
    require(n_ >= 0, Err::kInvalidArgs, "negative stream length");
    int classes = 0;
    for (int c : class_of_) {
      require(c >= 0, Err::kClassesNotPartition, "negative class id");
      classes = std::max(classes, c + 1);
    }
    marked_.assign(classes, false);
    best_.assign(classes, LexWeight{});
    seen_.assign(classes, 0);
    // X = t-1 with probability t - n/e, else t, where t = ceil(n/e).
    long long t = static_cast<long long>(std::ceil(n_ / kE));
    double low_prob = static_cast<double>(t) - n_ / kE;
    x_ = rng_.bernoulli(low_prob) ? t - 1 : t;
  }

  bool on_arrival(Element u, double weight) override {
    require(u >= 0 && u < static_cast<int>(class_of_.size()),
            Err::kUnknownElement, "element without a class");
    bool suppressed = weight < 0.0;
    if (weight < 0.0) weight = 0.0;
    const int c = class_of_[u];
    const long long prior = arrived_;
    bool accept = false;
    if (prior >= x_ && !marked_[c]) {
      if (seen_[c] > 0) {
        // Beats the observed class maximum: mark and accept.
        if (LexWeight{weight, u}.beats(best_[c])) {
          marked_[c] = true;
          accept = true;
        }
      } else {
        // First arrival of the class: mark it, accept with probability
        // X / (arrivals so far); an empty history accepts outright.
        marked_[c] = true;
        double p = prior == 0 ? 1.0
                              : static_cast<double>(x_) /
                                    static_cast<double>(prior);
        accept = rng_.bernoulli(p);
      }
    }
    if (accept && !suppressed) selected_.insert(u);
    // u joins the observed history either way.
    if (!has_seen(c) || LexWeight{weight, u}.beats(best_[c])) {
      best_[c] = LexWeight{weight, u};
    }
    ++seen_[c];
    ++arrived_;
    return accept && !suppressed;
  }

  ElementSet finish() override { return selected_; }

  long long learning_length() const { return x_; }

 private:
  bool has_seen(int c) const { return seen_[c] > 0; }

  int n_;
  std::vector<int> class_of_;
  Rng rng_;
  long long x_ = 0;
  long long arrived_ = 0;
  std::vector<bool> marked_;
  std::vector<LexWeight> best_;
  std::vector<int> seen_;
  ElementSet selected_;
};

class GreedyOnlineAlgorithm : public OnlineAlgorithm {
 public:
  explicit GreedyOnlineAlgorithm(const LinearContext& ctx)
      : matroid_(ctx.matroid) {
    require(matroid_ != nullptr, Err::kInvalidArgs,
            "greedy acceptance needs an independence oracle");
  }

  bool on_arrival(Element u, double weight) override {
    if (weight <= 0.0) return false;
    if (!matroid_->is_independent(selected_.with(u))) return false;
    selected_.insert(u);
    return true;
  }

  ElementSet finish() override { return selected_; }

 private:
  const Matroid* matroid_;
  ElementSet selected_;
};

}  // namespace

double dynkin_success_probability(int n, int r) {
  require(n >= 1, Err::kEmptyGround, "stream must be non-empty");
  require(r >= 1 && r <= n, Err::kIndexOutOfRange,
          "cutoff must lie in [1, n]");
  if (r == 1) return 1.0 / n;
  double sum = 0.0;
  for (int j = n; j >= r; --j) sum += 1.0 / (j - 1);
  return (static_cast<double>(r - 1) / n) * sum;
}

DynkinChoice dynkin_best(int n) {
  require(n >= 1, Err::kEmptyGround, "stream must be non-empty");
  DynkinChoice best{1, dynkin_success_probability(n, 1)};
  for (int r = 2; r <= n; ++r) {
    double p = dynkin_success_probability(n, r);
    if (p > best.p) best = DynkinChoice{r, p};
  }
  return best;
}

std::unique_ptr<OnlineAlgorithm> make_dynkin(const LinearContext& ctx,
                                             bool capped) {
  return std::make_unique<DynkinAlgorithm>(ctx, capped);
}

double alpha_partition(long long n) {
  require(n >= 1, Err::kEmptyGround, "ground set must be non-empty");
  const long long t = static_cast<long long>(std::ceil(n / kE));
  double sum = 0.0;
  for (long long j = n - 1; j >= t; --j) sum += 1.0 / (kE * j);
  return 1.0 / (static_cast<double>(t) / n - 1.0 / kE + sum);
}

std::unique_ptr<OnlineAlgorithm> make_partition_msp(
    const LinearContext& ctx, std::vector<int> class_of) {
  return std::make_unique<PartitionMspAlgorithm>(ctx, std::move(class_of));
}

std::unique_ptr<OnlineAlgorithm> make_greedy_online(const LinearContext& ctx) {
  return std::make_unique<GreedyOnlineAlgorithm>(ctx);
}

PartialMspWrapper::PartialMspWrapper(std::unique_ptr<OnlineAlgorithm> inner,
                                     ElementSet known, int n_total,
                                     std::uint64_t seed)
    : inner_(std::move(inner)),
      pool_(known.elements()),
      known_(std::move(known)),
      real_left_(n_total - static_cast<int>(pool_.size())),
      rng_(seed) {
  require(inner_ != nullptr, Err::kInvalidArgs, "missing inner algorithm");
  require(real_left_ >= 0, Err::kInvalidArgs,
          "known set larger than the declared stream");
  delivered_.reserve(n_total);
}

void PartialMspWrapper::feed_dummy() {
  std::size_t i = static_cast<std::size_t>(rng_.below(pool_.size()));
  Element dummy = pool_[i];
  pool_[i] = pool_.back();
  pool_.pop_back();
  delivered_.push_back(dummy);
  inner_->on_arrival(dummy, 0.0);
}

bool PartialMspWrapper::on_arrival(Element u, double weight) {
  require(real_left_ > 0, Err::kInvalidArgs,
          "more real arrivals than declared");
  require(!known_.contains(u), Err::kInvalidArgs,
          "known elements cannot arrive");
  // Sequential uniform interleaving: at every step the next delivered
  // slot is a real element with probability real/(real + dummies).
  while (true) {
    double p_real = static_cast<double>(real_left_) /
                    static_cast<double>(real_left_ + pool_.size());
    if (rng_.bernoulli(p_real)) break;
    feed_dummy();
  }
  --real_left_;
  delivered_.push_back(u);
  return inner_->on_arrival(u, weight);
}

ElementSet PartialMspWrapper::finish() {
  while (!pool_.empty()) feed_dummy();
  return set_difference(inner_->finish(), known_);
}

std::unique_ptr<OnlineAlgorithm> partial_msp_wrap(
    std::unique_ptr<OnlineAlgorithm> inner, const ElementSet& known,
    int n_total, std::uint64_t seed) {
  return std::make_unique<PartialMspWrapper>(std::move(inner), known, n_total,
                                             seed);
}

}  // namespace smsp
