#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace apsum {

// All term arithmetic is exact. The constructed families contain values like
// 2^(h+q) that overflow any fixed width, so the whole core runs on cpp_int.
using Bigint = boost::multiprecision::cpp_int;

inline Bigint pow2(unsigned k) { return Bigint(1) << k; }

// Positions of the 1-bits in the binary expansion of a, ascending. a >= 1.
std::vector<unsigned> pow_set(const Bigint& a);

// True iff the binary expansions of a and b share no bit position,
// i.e. (a & b) == 0.
bool power_disjoint(const Bigint& a, const Bigint& b);

// Parses a nonnegative decimal integer; rejects anything else.
Bigint parse_bigint(std::string_view text);

std::string to_string(const Bigint& x);

}  // namespace apsum
