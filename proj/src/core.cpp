#include "apsum/progression.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "apsum/errors.hpp"
#include "apsum/sets.hpp"

namespace apsum {

// ---- bigint helpers ------------------------------------------------------

std::vector<unsigned> pow_set(const Bigint& a) {
  if (a < 1) throw std::invalid_argument("pow_set: argument must be positive");
  std::vector<unsigned> bits;
  const unsigned top = boost::multiprecision::msb(a);
  for (unsigned k = 0; k <= top; ++k) {
    if (boost::multiprecision::bit_test(a, k)) bits.push_back(k);
  }
  return bits;
}

bool power_disjoint(const Bigint& a, const Bigint& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("power_disjoint: arguments must be positive");
  return (a & b) == 0;
}

Bigint parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_bigint: empty string");
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("parse_bigint: not a decimal integer");
  }
  return Bigint(std::string(text));
}

std::string to_string(const Bigint& x) { return x.str(); }

// ---- IndexSet --------------------------------------------------------------

IndexSet::IndexSet(std::vector<int> elements) : elems_(std::move(elements)) {
  if (elems_.empty()) throw std::invalid_argument("IndexSet: must be nonempty");
  std::sort(elems_.begin(), elems_.end());
  if (elems_.front() < 1) throw std::invalid_argument("IndexSet: elements must be >= 1");
  if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
    throw std::invalid_argument("IndexSet: elements must be distinct");
}

IndexSet IndexSet::from_mask(std::uint64_t mask) {
  if (mask == 0) throw std::invalid_argument("IndexSet: empty mask");
  std::vector<int> elems;
  for (int k = 0; k < 64; ++k)
    if (mask >> k & 1) elems.push_back(k + 1);
  return IndexSet(std::move(elems));
}

bool IndexSet::contains(int x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool IndexSet::disjoint_with(const IndexSet& other) const {
  for (int x : other.elems_)
    if (contains(x)) return false;
  return true;
}

IndexSet IndexSet::union_of(const IndexSet& a, const IndexSet& b) {
  std::vector<int> elems;
  std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                 std::back_inserter(elems));
  return IndexSet(std::move(elems));
}

std::uint64_t IndexSet::mask() const {
  if (max() > 64) throw std::out_of_range("IndexSet: element too large for a 64-bit mask");
  std::uint64_t m = 0;
  for (int x : elems_) m |= std::uint64_t{1} << (x - 1);
  return m;
}

// ---- ValueSet --------------------------------------------------------------

ValueSet::ValueSet(std::vector<Bigint> elements) : elems_(std::move(elements)) {
  if (elems_.empty()) throw std::invalid_argument("ValueSet: must be nonempty");
  std::sort(elems_.begin(), elems_.end());
  if (elems_.front() < 1) throw std::invalid_argument("ValueSet: elements must be >= 1");
  if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
    throw std::invalid_argument("ValueSet: elements must be distinct");
}

bool ValueSet::contains(const Bigint& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

ValueSet finite_sums(const ValueSet& s, std::size_t cap) {
  if (s.size() > cap)
    throw ResourceError("finite_sums: set of size " + std::to_string(s.size()) +
                        " exceeds cap " + std::to_string(cap));
  std::set<Bigint> sums;
  for (const Bigint& x : s.elements()) {
    std::vector<Bigint> grown;
    grown.reserve(sums.size() + 1);
    for (const Bigint& acc : sums) grown.push_back(acc + x);
    grown.push_back(x);
    sums.insert(grown.begin(), grown.end());
  }
  return ValueSet(std::vector<Bigint>(sums.begin(), sums.end()));
}

std::vector<IndexSet> nonempty_unions(std::span<const IndexSet> blocks) {
  if (blocks.empty()) throw std::invalid_argument("nonempty_unions: no blocks");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (!blocks[i].disjoint_with(blocks[j]))
        throw std::invalid_argument("nonempty_unions: blocks must be pairwise disjoint");
  if (blocks.size() > 20) throw ResourceError("nonempty_unions: too many blocks");

  std::vector<IndexSet> unions;
  const std::size_t total = (std::size_t{1} << blocks.size()) - 1;
  unions.reserve(total);
  for (std::size_t pick = 1; pick <= total; ++pick) {
    std::optional<IndexSet> acc;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!(pick >> i & 1)) continue;
      acc = acc ? IndexSet::union_of(*acc, blocks[i]) : blocks[i];
    }
    unions.push_back(std::move(*acc));
  }
  return unions;
}

// ---- Progression -----------------------------------------------------------

Progression::Progression(Bigint first, Bigint diff, int length)
    : first_(std::move(first)), diff_(std::move(diff)), length_(length) {
  if (first_ < 1) throw std::invalid_argument("Progression: first term must be >= 1");
  if (diff_ < 1) throw std::invalid_argument("Progression: difference must be >= 1");
  if (length_ < 2) throw std::invalid_argument("Progression: length must be >= 2");
}

Bigint Progression::term(int s) const {
  if (s < 1 || s > length_)
    throw std::out_of_range("Progression::term: index " + std::to_string(s) +
                            " outside [1," + std::to_string(length_) + "]");
  return first_ + Bigint(s - 1) * diff_;
}

Bigint Progression::last() const { return term(length_); }

std::vector<Bigint> Progression::terms() const {
  std::vector<Bigint> out;
  out.reserve(length_);
  for (int s = 1; s <= length_; ++s) out.push_back(term(s));
  return out;
}

Progression Progression::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    throw std::invalid_argument("Progression::parse: expected \"first:diff:length\"");
  const Bigint first = parse_bigint(text.substr(0, c1));
  const Bigint diff = parse_bigint(text.substr(c1 + 1, c2 - c1 - 1));
  const Bigint len = parse_bigint(text.substr(c2 + 1));
  if (len > 1'000'000'000) throw std::invalid_argument("Progression::parse: length too large");
  return Progression(first, diff, static_cast<int>(len));
}

std::string Progression::str() const {
  return first_.str() + ":" + diff_.str() + ":" + std::to_string(length_);
}

Progression operator+(const Progression& p, const Progression& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("Progression sum: length mismatch (" +
                                std::to_string(p.length()) + " vs " +
                                std::to_string(q.length()) + ")");
  return Progression(p.first() + q.first(), p.diff() + q.diff(), p.length());
}

Progression sum_over(std::span<const Progression> family, const IndexSet& c) {
  if (c.max() > static_cast<int>(family.size()))
    throw std::out_of_range("sum_over: index " + std::to_string(c.max()) +
                            " outside family of size " + std::to_string(family.size()));
  std::optional<Progression> acc;
  for (int i : c.elements()) {
    const Progression& p = family[static_cast<std::size_t>(i) - 1];
    acc = acc ? *acc + p : p;
  }
  return *acc;
}

bool precedes(const Progression& p, const Progression& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("precedes: length mismatch");
  // Terms are linear in s, so strict inequality at both endpoints is
  // equivalent to strict inequality everywhere.
  return p.first() < q.first() && p.last() < q.last();
}

bool precedes_by_terms(const Progression& p, const Progression& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("precedes: length mismatch");
  for (int s = 1; s <= p.length(); ++s)
    if (p.term(s) >= q.term(s)) return false;
  return true;
}

bool lex_less(const Progression& p, const Progression& q) {
  if (p.first() != q.first()) return p.first() < q.first();
  return p.diff() < q.diff();
}

}  // namespace apsum
