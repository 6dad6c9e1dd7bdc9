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

#ifndef SMSP_MATROID_HPP_
#define SMSP_MATROID_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "smsp/element_set.hpp"

namespace smsp {

struct UniformSpec {
  int k = 0;
};

struct PartitionSpec {
  std::vector<int> class_of;     // element -> class id
  std::vector<int> capacity_of;  // class id -> capacity; empty means all 1
};

struct GraphicSpec {
  std::vector<std::pair<int, int>> edge_of;  // element -> vertex pair
};

struct LaminarSpec {
  struct Arc {
    ElementSet set;
    int capacity = 0;
  };
  std::vector<Arc> family;  // pairwise nested or disjoint
};

struct TransversalSpec {
  std::vector<std::vector<int>> adjacency;  // element -> right vertices
};

// Columns over the prime field GF(2^31 - 1), at most `sparsity`
// nonzero entries per column.
struct LinearSparseSpec {
  std::vector<std::vector<std::int64_t>> columns;  // element -> column
  int sparsity = 0;
};

struct MatroidSpec;

struct RestrictionSpec {
  std::shared_ptr<MatroidSpec> base;
  ElementSet keep;
};

using MatroidSpecVariant =
    std::variant<UniformSpec, PartitionSpec, GraphicSpec, LaminarSpec,
                 TransversalSpec, LinearSparseSpec, RestrictionSpec>;

// Wrapper instead of a plain alias so RestrictionSpec can refer to the
// still-incomplete MatroidSpec.
struct MatroidSpec : MatroidSpecVariant {
  using MatroidSpecVariant::variant;
};

inline const MatroidSpecVariant& as_variant(const MatroidSpec& s) { return s; }

namespace internal {
class MatroidEngine;
}  // namespace internal

// Independence oracle. Immutable after construction; all queries are
// const and safe to share across threads.
class Matroid {
 public:
  // Builds the oracle for a ground set of n elements with ids 0..n-1.
  Matroid(const MatroidSpec& spec, int n);

  bool is_independent(const ElementSet& s) const;
  int rank(const ElementSet& s) const;
  // True iff rank(s + u) == rank(s); u may already belong to s.
  bool is_spanned(Element u, const ElementSet& s) const;

  // Oracle over `keep` with independent sets restricted to subsets of
  // `keep`. Element ids are preserved.
  Matroid restricted(const ElementSet& keep) const;

  const GroundSet& ground() const { return ground_; }
  int full_size() const { return n_; }  // size of the unrestricted ground set
  int rank_full() const;                // rank of the whole ground set

  // Partition-structure access for the class-marking subroutine.
  bool is_unitary_partition() const;
  std::vector<int> partition_classes() const;  // requires partition kind

  const MatroidSpec& spec() const { return *spec_; }

 private:
  Matroid() = default;
  void check_known(const ElementSet& s) const;

  std::shared_ptr<const MatroidSpec> spec_;
  std::shared_ptr<const internal::MatroidEngine> engine_;
  GroundSet ground_;
  int n_ = 0;
};

struct AxiomReport {
  bool ok = false;
  // "empty-dependent", "downward-closure", "exchange" or "" when ok.
  std::string violation;
  std::optional<ElementSet> witness_set;       // failing S (or I for exchange)
  std::optional<ElementSet> witness_subset;    // failing S-u (or J)
  long long independent_count = 0;
  long long exchange_pairs_checked = 0;
};

// Exhaustive check of the matroid axioms over all subsets of {0..n-1}:
// the empty set is independent, independence is downward closed, and
// for independent |I| > |J| some e in I\J keeps J+e independent.
// Cost is exponential; n must be at most 16.
AxiomReport verify_axioms(int n,
                          const std::function<bool(std::uint64_t)>& indep);
AxiomReport verify_axioms(const Matroid& m);

}  // namespace smsp

#endif  // SMSP_MATROID_HPP_
