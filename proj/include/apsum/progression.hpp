#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apsum/bigint.hpp"
#include "apsum/sets.hpp"

namespace apsum {

// An l-term arithmetic progression with positive first term and positive
// common difference, stored as (first, diff, length). Terms are never
// materialized unless asked for; term(s) = first + (s-1)*diff, 1-based.
class Progression {
 public:
  Progression(Bigint first, Bigint diff, int length);

  const Bigint& first() const { return first_; }
  const Bigint& diff() const { return diff_; }
  int length() const { return length_; }

  Bigint term(int s) const;                 // 1 <= s <= length
  Bigint last() const;                      // term(length)
  std::vector<Bigint> terms() const;        // derived view

  // Text form "first:diff:length", decimal, arbitrary precision.
  static Progression parse(std::string_view text);
  std::string str() const;

  bool operator==(const Progression&) const = default;

 private:
  Bigint first_;
  Bigint diff_;
  int length_;
};

// Pointwise sum: (P+Q)[s] = P[s]+Q[s]. Lengths must match.
Progression operator+(const Progression& p, const Progression& q);

// Pointwise sum of the members of a family selected by c (1-based indices).
// A singleton c returns that member unchanged.
Progression sum_over(std::span<const Progression> family, const IndexSet& c);

// P precedes Q iff every term of P is strictly below the matching term of Q.
// With positive diffs this reduces to comparing the two endpoints; the
// definitional term-by-term check is kept alongside for cross-testing.
bool precedes(const Progression& p, const Progression& q);
bool precedes_by_terms(const Progression& p, const Progression& q);

// Tie-break order used by all searches: (first, diff), lengths equal.
bool lex_less(const Progression& p, const Progression& q);

}  // namespace apsum
