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

#ifndef SMSP_ELEMENT_SET_HPP_
#define SMSP_ELEMENT_SET_HPP_

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace smsp {

using Element = int;

// Ordered set of element identifiers, stored as a sorted unique vector.
// Ground sets are dense 0..n-1 at construction time; restrictions and
// intermediate sets may be arbitrary subsets.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(std::initializer_list<Element> elems);
  explicit ElementSet(std::vector<Element> elems);  // sorts and dedups

  static ElementSet range(int n);  // {0, 1, ..., n-1}
  // Bit i of mask set -> universe[i] belongs to the set.
  static ElementSet from_mask(std::uint64_t mask, const ElementSet& universe);
  static ElementSet from_mask(std::uint64_t mask);  // universe = {0..63}

  bool contains(Element u) const;
  bool insert(Element u);  // false if already present
  bool erase(Element u);   // false if absent
  void clear() { elems_.clear(); }

  ElementSet with(Element u) const;
  ElementSet without(Element u) const;

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  bool subset_of(const ElementSet& other) const;
  Element max_element() const;  // requires non-empty

  // Requires every element in [0, 64).
  std::uint64_t mask() const;

  const std::vector<Element>& elements() const { return elems_; }
  std::vector<Element>::const_iterator begin() const { return elems_.begin(); }
  std::vector<Element>::const_iterator end() const { return elems_.end(); }

  bool operator==(const ElementSet&) const = default;

 private:
  std::vector<Element> elems_;
};

ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersect(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);

using GroundSet = ElementSet;

}  // namespace smsp

#endif  // SMSP_ELEMENT_SET_HPP_
