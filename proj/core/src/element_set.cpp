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

#include "smsp/element_set.hpp"

#include <algorithm>

#include "smsp/error.hpp"

namespace smsp {

ElementSet::ElementSet(std::initializer_list<Element> elems)
    : ElementSet(std::vector<Element>(elems)) {}

ElementSet::ElementSet(std::vector<Element> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

ElementSet ElementSet::range(int n) {
  ElementSet s;
  s.elems_.resize(n);
  for (int i = 0; i < n; ++i) s.elems_[i] = i;
  return s;
}

ElementSet ElementSet::from_mask(std::uint64_t mask, const ElementSet& universe) {
  ElementSet s;
  const auto& u = universe.elements();
  for (std::size_t i = 0; i < u.size() && i < 64; ++i) {
    if (mask & (std::uint64_t{1} << i)) s.elems_.push_back(u[i]);
  }
  return s;
}

ElementSet ElementSet::from_mask(std::uint64_t mask) {
  ElementSet s;
  for (int i = 0; i < 64; ++i) {
    if (mask & (std::uint64_t{1} << i)) s.elems_.push_back(i);
  }
  return s;
}

bool ElementSet::contains(Element u) const {
  return std::binary_search(elems_.begin(), elems_.end(), u);
}

bool ElementSet::insert(Element u) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), u);
  if (it != elems_.end() && *it == u) return false;
  elems_.insert(it, u);
  return true;
}

bool ElementSet::erase(Element u) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), u);
  if (it == elems_.end() || *it != u) return false;
  elems_.erase(it);
  return true;
}

ElementSet ElementSet::with(Element u) const {
  ElementSet s = *this;
  s.insert(u);
  return s;
}

ElementSet ElementSet::without(Element u) const {
  ElementSet s = *this;
  s.erase(u);
  return s;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

Element ElementSet::max_element() const {
  require(!elems_.empty(), Err::kInvalidArgs, "max_element of empty set");
  return elems_.back();
}

std::uint64_t ElementSet::mask() const {
  std::uint64_t m = 0;
  for (Element u : elems_) {
    require(u >= 0 && u < 64, Err::kGroundTooLarge,
            "mask() needs element ids below 64");
    m |= std::uint64_t{1} << u;
  }
  return m;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  std::vector<Element> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return ElementSet(std::move(out));
}

ElementSet set_intersect(const ElementSet& a, const ElementSet& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return ElementSet(std::move(out));
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return ElementSet(std::move(out));
}

}  // namespace smsp
