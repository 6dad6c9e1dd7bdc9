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

#include "smsp/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "smsp/error.hpp"

namespace smsp {
namespace internal {

class MatroidEngine {
 public:
  virtual ~MatroidEngine() = default;
  virtual bool indep(const ElementSet& s) const = 0;
  // Default rank: greedy insertion, exact for any matroid.
  virtual int rank(const ElementSet& s) const {
    ElementSet acc;
    for (Element u : s) {
      if (indep(acc.with(u))) acc.insert(u);
    }
    return acc.size();
  }
};

namespace {

class UniformEngine : public MatroidEngine {
 public:
  UniformEngine(const UniformSpec& spec, int n) : k_(spec.k) {
    require(spec.k >= 0, Err::kInvalidArgs, "uniform rank must be >= 0");
    (void)n;
  }
  bool indep(const ElementSet& s) const override { return s.size() <= k_; }
  int rank(const ElementSet& s) const override { return std::min(s.size(), k_); }

 private:
  int k_;
};

class PartitionEngine : public MatroidEngine {
 public:
  PartitionEngine(const PartitionSpec& spec, int n)
      : class_of_(spec.class_of), capacity_of_(spec.capacity_of) {
    require(static_cast<int>(class_of_.size()) == n, Err::kClassesNotPartition,
            "class_of must assign every element exactly once");
    int classes = 0;
    for (int c : class_of_) {
      require(c >= 0, Err::kClassesNotPartition, "negative class id");
      classes = std::max(classes, c + 1);
    }
    if (capacity_of_.empty()) {
      capacity_of_.assign(classes, 1);  // unitary
    }
    require(static_cast<int>(capacity_of_.size()) >= classes,
            Err::kClassesNotPartition, "class id without a capacity");
    for (int c : capacity_of_) {
      require(c >= 0, Err::kClassesNotPartition, "negative capacity");
    }
  }

  bool indep(const ElementSet& s) const override {
    std::vector<int> used(capacity_of_.size(), 0);
    for (Element u : s) {
      if (++used[class_of_[u]] > capacity_of_[class_of_[u]]) return false;
    }
    return true;
  }

  int rank(const ElementSet& s) const override {
    std::vector<int> used(capacity_of_.size(), 0);
    for (Element u : s) ++used[class_of_[u]];
    int r = 0;
    for (std::size_t c = 0; c < used.size(); ++c) {
      r += std::min(used[c], capacity_of_[c]);
    }
    return r;
  }

  const std::vector<int>& class_of() const { return class_of_; }
  const std::vector<int>& capacity_of() const { return capacity_of_; }

 private:
  std::vector<int> class_of_;
  std::vector<int> capacity_of_;
};

// Union-find forest test: a set of edges is independent iff it is acyclic.
class GraphicEngine : public MatroidEngine {
 public:
  GraphicEngine(const GraphicSpec& spec, int n) : edge_of_(spec.edge_of) {
    require(static_cast<int>(edge_of_.size()) == n, Err::kInvalidArgs,
            "edge_of must assign every element exactly once");
    vertices_ = 0;
    for (auto [a, b] : edge_of_) {
      require(a >= 0 && b >= 0, Err::kInvalidArgs, "negative vertex id");
      vertices_ = std::max({vertices_, a + 1, b + 1});
    }
  }

  bool indep(const ElementSet& s) const override {
    std::vector<int> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    for (Element u : s) {
      auto [a, b] = edge_of_[u];
      int ra = find(parent, a), rb = find(parent, b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }

  int rank(const ElementSet& s) const override {
    std::vector<int> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    int r = 0;
    for (Element u : s) {
      auto [a, b] = edge_of_[u];
      int ra = find(parent, a), rb = find(parent, b);
      if (ra != rb) {
        parent[ra] = rb;
        ++r;
      }
    }
    return r;
  }

 private:
  static int find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  std::vector<std::pair<int, int>> edge_of_;
  int vertices_;
};

class LaminarEngine : public MatroidEngine {
 public:
  LaminarEngine(const LaminarSpec& spec, int n) : family_(spec.family) {
    for (const auto& arc : family_) {
      require(arc.capacity >= 0, Err::kInvalidArgs, "negative capacity");
      for (Element u : arc.set) {
        require(u >= 0 && u < n, Err::kUnknownElement,
                "family set mentions an element outside the ground set");
      }
    }
    for (std::size_t i = 0; i < family_.size(); ++i) {
      for (std::size_t j = i + 1; j < family_.size(); ++j) {
        const ElementSet& a = family_[i].set;
        const ElementSet& b = family_[j].set;
        ElementSet inter = set_intersect(a, b);
        bool nested_or_disjoint =
            inter.empty() || inter == a || inter == b;
        require(nested_or_disjoint, Err::kNonLaminarFamily,
                "family sets must be pairwise nested or disjoint");
      }
    }
  }

  bool indep(const ElementSet& s) const override {
    for (const auto& arc : family_) {
      if (set_intersect(s, arc.set).size() > arc.capacity) return false;
    }
    return true;
  }

 private:
  std::vector<LaminarSpec::Arc> family_;
};

// Independence = existence of a matching saturating the set; tested
// with augmenting paths.
class TransversalEngine : public MatroidEngine {
 public:
  TransversalEngine(const TransversalSpec& spec, int n)
      : adjacency_(spec.adjacency) {
    require(static_cast<int>(adjacency_.size()) == n, Err::kInvalidArgs,
            "adjacency must cover every element");
    right_ = 0;
    for (const auto& nbrs : adjacency_) {
      for (int v : nbrs) {
        require(v >= 0, Err::kInvalidArgs, "negative right vertex id");
        right_ = std::max(right_, v + 1);
      }
    }
  }

  bool indep(const ElementSet& s) const override {
    return matching_size(s) == s.size();
  }

  int rank(const ElementSet& s) const override { return matching_size(s); }

 private:
  int matching_size(const ElementSet& s) const {
    std::vector<int> match_right(right_, -1);
    int matched = 0;
    for (Element u : s) {
      std::vector<char> seen(right_, 0);
      if (augment(u, seen, match_right)) ++matched;
    }
    return matched;
  }

  bool augment(Element u, std::vector<char>& seen,
               std::vector<int>& match_right) const {
    for (int v : adjacency_[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(match_right[v], seen, match_right)) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> adjacency_;
  int right_;
};

constexpr std::int64_t kFieldPrime = 2147483647;  // 2^31 - 1

std::int64_t mod_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t result = 1;
  base %= kFieldPrime;
  while (exp > 0) {
    if (exp & 1) result = (__int128)result * base % kFieldPrime;
    base = (__int128)base * base % kFieldPrime;
    exp >>= 1;
  }
  return result;
}

std::int64_t mod_inv(std::int64_t a) { return mod_pow(a, kFieldPrime - 2); }

// Exact Gaussian elimination over GF(2^31 - 1).
class LinearSparseEngine : public MatroidEngine {
 public:
  LinearSparseEngine(const LinearSparseSpec& spec, int n) {
    require(static_cast<int>(spec.columns.size()) == n, Err::kInvalidArgs,
            "columns must cover every element");
    rows_ = n > 0 ? spec.columns[0].size() : 0;
    columns_.resize(n);
    for (int e = 0; e < n; ++e) {
      require(spec.columns[e].size() == rows_, Err::kInvalidArgs,
              "all columns must have the same number of rows");
      columns_[e].resize(rows_);
      int nonzero = 0;
      for (std::size_t r = 0; r < rows_; ++r) {
        std::int64_t v = spec.columns[e][r] % kFieldPrime;
        if (v < 0) v += kFieldPrime;
        columns_[e][r] = v;
        if (v != 0) ++nonzero;
      }
      require(nonzero <= spec.sparsity, Err::kSparsityViolated,
              "column exceeds the declared sparsity");
    }
  }

  bool indep(const ElementSet& s) const override {
    return gf_rank(s) == s.size();
  }

  int rank(const ElementSet& s) const override { return gf_rank(s); }

 private:
  int gf_rank(const ElementSet& s) const {
    std::vector<std::vector<std::int64_t>> mat;
    mat.reserve(s.size());
    for (Element u : s) mat.push_back(columns_[u]);
    int rank = 0;
    for (std::size_t col = 0; col < rows_ && rank < (int)mat.size(); ++col) {
      int pivot = -1;
      for (int r = rank; r < (int)mat.size(); ++r) {
        if (mat[r][col] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) continue;
      std::swap(mat[rank], mat[pivot]);
      std::int64_t inv = mod_inv(mat[rank][col]);
      for (int r = rank + 1; r < (int)mat.size(); ++r) {
        if (mat[r][col] == 0) continue;
        std::int64_t factor = (__int128)mat[r][col] * inv % kFieldPrime;
        for (std::size_t c = col; c < rows_; ++c) {
          std::int64_t sub = (__int128)factor * mat[rank][c] % kFieldPrime;
          mat[r][c] = (mat[r][c] - sub + kFieldPrime) % kFieldPrime;
        }
      }
      ++rank;
    }
    return rank;
  }

  std::vector<std::vector<std::int64_t>> columns_;
  std::size_t rows_;
};

std::shared_ptr<const MatroidEngine> build_engine(const MatroidSpec& spec,
                                                  int n);

struct EngineBuilder {
  int n;
  std::shared_ptr<const MatroidEngine> operator()(const UniformSpec& s) const {
    return std::make_shared<UniformEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const PartitionSpec& s) const {
    return std::make_shared<PartitionEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const GraphicSpec& s) const {
    return std::make_shared<GraphicEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const LaminarSpec& s) const {
    return std::make_shared<LaminarEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const TransversalSpec& s) const {
    return std::make_shared<TransversalEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const LinearSparseSpec& s) const {
    return std::make_shared<LinearSparseEngine>(s, n);
  }
  std::shared_ptr<const MatroidEngine> operator()(const RestrictionSpec&) const {
    fail(Err::kInvalidArgs, "restriction handled at the oracle layer");
  }
};

std::shared_ptr<const MatroidEngine> build_engine(const MatroidSpec& spec,
                                                  int n) {
  return std::visit(EngineBuilder{n}, as_variant(spec));
}

}  // namespace
}  // namespace internal

Matroid::Matroid(const MatroidSpec& spec, int n) {
  require(n >= 0, Err::kInvalidArgs, "negative ground size");
  if (const auto* r = std::get_if<RestrictionSpec>(&as_variant(spec))) {
    require(r->base != nullptr, Err::kInvalidArgs, "restriction without base");
    Matroid base(*r->base, n);
    *this = base.restricted(r->keep);
    spec_ = std::make_shared<MatroidSpec>(spec);
    return;
  }
  spec_ = std::make_shared<MatroidSpec>(spec);
  engine_ = internal::build_engine(*spec_, n);
  ground_ = GroundSet::range(n);
  n_ = n;
}

void Matroid::check_known(const ElementSet& s) const {
  for (Element u : s) {
    require(u >= 0 && u < n_ && ground_.contains(u), Err::kUnknownElement,
            "element outside the oracle's ground set");
  }
}

bool Matroid::is_independent(const ElementSet& s) const {
  check_known(s);
  return engine_->indep(s);
}

int Matroid::rank(const ElementSet& s) const {
  check_known(s);
  return engine_->rank(s);
}

bool Matroid::is_spanned(Element u, const ElementSet& s) const {
  check_known(s);
  check_known(ElementSet{u});
  if (s.contains(u)) return true;
  return engine_->rank(s.with(u)) == engine_->rank(s);
}

Matroid Matroid::restricted(const ElementSet& keep) const {
  check_known(keep);
  Matroid m;
  m.spec_ = spec_;
  m.engine_ = engine_;
  m.ground_ = keep;
  m.n_ = n_;
  return m;
}

int Matroid::rank_full() const { return engine_->rank(ground_); }

bool Matroid::is_unitary_partition() const {
  const auto* p = std::get_if<PartitionSpec>(&as_variant(*spec_));
  if (p == nullptr) return false;
  if (p->capacity_of.empty()) return true;
  return std::all_of(p->capacity_of.begin(), p->capacity_of.end(),
                     [](int c) { return c == 1; });
}

std::vector<int> Matroid::partition_classes() const {
  const auto* p = std::get_if<PartitionSpec>(&as_variant(*spec_));
  require(p != nullptr, Err::kInvalidArgs,
          "class structure requires a partition oracle");
  return p->class_of;
}

AxiomReport verify_axioms(int n,
                          const std::function<bool(std::uint64_t)>& indep) {
  require(n >= 0 && n <= 16, Err::kGroundTooLarge,
          "exhaustive axiom check supports at most 16 elements");
  AxiomReport report;
  const std::uint64_t total = std::uint64_t{1} << n;

  std::vector<char> is_indep(total, 0);
  for (std::uint64_t m = 0; m < total; ++m) {
    is_indep[m] = indep(m) ? 1 : 0;
    if (is_indep[m]) ++report.independent_count;
  }

  if (!is_indep[0]) {
    report.violation = "empty-dependent";
    report.witness_set = ElementSet{};
    return report;
  }

  for (std::uint64_t m = 1; m < total; ++m) {
    if (!is_indep[m]) continue;
    for (int e = 0; e < n; ++e) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if ((m & bit) && !is_indep[m ^ bit]) {
        report.violation = "downward-closure";
        report.witness_set = ElementSet::from_mask(m);
        report.witness_subset = ElementSet::from_mask(m ^ bit);
        return report;
      }
    }
  }

  // With downward closure established, checking exchange for
  // |I| = |J| + 1 is equivalent to checking it for all pairs.
  std::vector<std::vector<std::uint64_t>> by_size(n + 1);
  for (std::uint64_t m = 0; m < total; ++m) {
    if (is_indep[m]) by_size[std::popcount(m)].push_back(m);
  }
  for (int sz = 0; sz < n; ++sz) {
    for (std::uint64_t j : by_size[sz]) {
      for (std::uint64_t i : by_size[sz + 1]) {
        ++report.exchange_pairs_checked;
        std::uint64_t candidates = i & ~j;
        bool found = false;
        while (candidates) {
          std::uint64_t bit = candidates & (~candidates + 1);
          if (is_indep[j | bit]) {
            found = true;
            break;
          }
          candidates ^= bit;
        }
        if (!found) {
          report.violation = "exchange";
          report.witness_set = ElementSet::from_mask(i);
          report.witness_subset = ElementSet::from_mask(j);
          return report;
        }
      }
    }
  }

  report.ok = true;
  return report;
}

AxiomReport verify_axioms(const Matroid& m) {
  require(m.ground().size() <= 16, Err::kGroundTooLarge,
          "exhaustive axiom check supports at most 16 elements");
  const ElementSet universe = m.ground();
  return verify_axioms(universe.size(), [&](std::uint64_t mask) {
    return m.is_independent(ElementSet::from_mask(mask, universe));
  });
}

}  // namespace smsp
