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

#ifndef SMSP_RNG_HPP_
#define SMSP_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace smsp {

// Deterministic draws on top of mt19937_64. The standard library
// distributions are implementation-defined, so replay across toolchains
// uses only the raw engine output plus the fixed mappings below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n);

  // Number of successes in n fair coin flips.
  int binomial_half(int n);

  // Number of successes in n Bernoulli(p) flips.
  int binomial(int n, double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

enum class Stream : std::uint64_t {
  kArrival = 1,     // arrival permutation of the ground set
  kLearning = 2,    // learning-prefix length draw
  kCoins = 3,       // per-element membership coins
  kLinear = 4,      // internal randomness of the linear subroutine
  kInterleave = 5,  // dummy interleaving of the known-set wrapper
  kShuffle = 6,     // candidate-order shuffle for the simulated variant
  kGenerator = 7,   // instance generation
  kAux = 8,
};

// Named, independently derivable random streams for one trial.
// Identical (seed, stream) always yields an identical draw sequence,
// regardless of which other streams were consumed.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed) : seed_(seed) {}

  Rng stream(Stream id) const;
  std::uint64_t stream_seed(Stream id) const;

  // Counter-based split: tape for trial `index` under this master seed.
  RandomTape derived(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// SplitMix64 finalizer; used for all seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace smsp

#endif  // SMSP_RNG_HPP_
