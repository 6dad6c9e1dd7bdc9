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

#include "smsp/rng.hpp"

namespace smsp {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

int Rng::binomial_half(int n) {
  int count = 0;
  for (int i = 0; i < n; ++i) count += static_cast<int>(eng_() >> 63);
  return count;
}

int Rng::binomial(int n, double p) {
  int count = 0;
  for (int i = 0; i < n; ++i) count += bernoulli(p) ? 1 : 0;
  return count;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t RandomTape::stream_seed(Stream id) const {
  return mix64(seed_ ^ mix64(static_cast<std::uint64_t>(id) * 0xd6e8feb86659fd93ULL));
}

Rng RandomTape::stream(Stream id) const { return Rng(stream_seed(id)); }

RandomTape RandomTape::derived(std::uint64_t index) const {
  return RandomTape(mix64(mix64(seed_) + index));
}

}  // namespace smsp
