#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apsum/bigint.hpp"

namespace apsum {

// A finite nonempty set of positive integers, kept strictly sorted.
// Plays the role of index sets B, C, D and of blocks inside [m].
class IndexSet {
 public:
  explicit IndexSet(std::vector<int> elements);
  static IndexSet from_mask(std::uint64_t mask);  // bit k-1 <-> element k

  const std::vector<int>& elements() const { return elems_; }
  int min() const { return elems_.front(); }
  int max() const { return elems_.back(); }
  std::size_t size() const { return elems_.size(); }
  bool contains(int x) const;

  // The ordering A < B of the block calculus: max A < min B.
  bool before(const IndexSet& other) const { return max() < other.min(); }

  bool disjoint_with(const IndexSet& other) const;
  static IndexSet union_of(const IndexSet& a, const IndexSet& b);

  std::uint64_t mask() const;  // requires max() <= 64

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<int> elems_;  // strictly increasing, all >= 1
};

// A finite set of positive integers of arbitrary size, kept sorted.
class ValueSet {
 public:
  explicit ValueSet(std::vector<Bigint> elements);

  const std::vector<Bigint>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool contains(const Bigint& x) const;

  bool operator==(const ValueSet&) const = default;

 private:
  std::vector<Bigint> elems_;  // strictly increasing, all >= 1
};

// All sums over nonempty subsets of s, with no repetition. The result has at
// most 2^|s|-1 elements, with equality iff all subset sums are distinct.
// |s| may not exceed cap (the 2^|s| blow-up must fail loudly).
ValueSet finite_sums(const ValueSet& s, std::size_t cap = 24);

// All nonempty unions of a pairwise disjoint collection of blocks.
// Exactly 2^n - 1 sets for n blocks; throws if the blocks overlap.
std::vector<IndexSet> nonempty_unions(std::span<const IndexSet> blocks);

}  // namespace apsum
