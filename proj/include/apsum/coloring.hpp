#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apsum/bigint.hpp"

namespace apsum {

using Color = int;  // colors are 1..c

// A total coloring of [p] given by an explicit table.
//
// Canonical form: reading cells 1..p, the first occurrence of color k+1
// appears after the first occurrence of color k. Every coloring is
// color-permutation-equivalent to exactly one canonical coloring; the
// searches enumerate only canonical representatives.
class TableColoring {
 public:
  TableColoring(int color_count, std::vector<std::uint8_t> cells);

  int domain() const { return static_cast<int>(cells_.size()); }  // p
  int color_count() const { return color_count_; }                // c
  Color color(int x) const;  // 1 <= x <= p

  bool is_canonical() const;
  TableColoring canonicalized() const;  // relabel colors by first occurrence

  // Compact text form: '1'-'9' for colors 1..9, 'a'-'z' for 10..35.
  // Colorings with more colors round-trip through JSON arrays instead.
  static TableColoring parse(std::string_view text, int color_count = 0);
  std::string str() const;

  const std::vector<std::uint8_t>& cells() const { return cells_; }

  bool operator==(const TableColoring&) const = default;

 private:
  int color_count_;
  std::vector<std::uint8_t> cells_;
};

// Appends one cell, preserving canonical form: the new color may not skip
// ahead of (max color used so far) + 1 and may not exceed color_count.
TableColoring extend(const TableColoring& partial, Color new_color);

// Streams every canonical coloring of [p] with at most c colors, in
// lexicographic cell order. Exactly one representative per orbit of the
// color-permutation action.
class CanonicalEnumerator {
 public:
  CanonicalEnumerator(int p, int c);
  std::optional<TableColoring> next();

 private:
  int p_;
  int c_;
  bool done_ = false;
  bool started_ = false;
  std::vector<std::uint8_t> cells_;
};

// A rule-based coloring, total on all positive integers. Used where a
// coloring of the whole of N is called for; every rule is deterministic.
class OracleColoring {
 public:
  enum class Kind { Modulus, Digit, Seeded };

  // color(x) = class_colors[x mod modulus]
  static OracleColoring modulus(std::uint64_t modulus, std::vector<Color> class_colors);
  // color(x) = digit_colors[(x / base^position) mod base]
  static OracleColoring digit(std::uint32_t base, std::uint32_t position,
                              std::vector<Color> digit_colors);
  // color(x) = hash(seed, x) mod c + 1, reproducible across runs
  static OracleColoring seeded(std::uint64_t seed, int color_count);

  // Common rules, expressed through the kinds above.
  static OracleColoring constant(Color color, int color_count = 0);
  static OracleColoring parity();                        // even -> 2, odd -> 1
  static OracleColoring residue(std::uint64_t modulus);  // class r -> color r+1

  Kind kind() const { return kind_; }
  int color_count() const { return color_count_; }
  Color color(const Bigint& x) const;

  std::uint64_t modulus_value() const { return modulus_; }
  std::uint32_t base() const { return base_; }
  std::uint32_t position() const { return position_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Color>& table() const { return table_; }

  bool operator==(const OracleColoring&) const = default;

 private:
  OracleColoring() = default;

  Kind kind_ = Kind::Modulus;
  int color_count_ = 1;
  std::uint64_t modulus_ = 1;     // Modulus
  std::uint32_t base_ = 2;        // Digit
  std::uint32_t position_ = 0;    // Digit
  std::uint64_t seed_ = 0;        // Seeded
  std::vector<Color> table_;      // class/digit -> color
};

// A total coloring of the nonempty subsets of [m], indexed by bitmask
// (bit k-1 <-> element k). Cell t of the backing array is the color of
// mask t, 1 <= t <= 2^m - 1.
class SetColoring {
 public:
  SetColoring(int m, int color_count, std::vector<std::uint8_t> cells);

  int ground_size() const { return m_; }
  int color_count() const { return color_count_; }
  std::size_t cell_count() const { return cells_.size(); }  // 2^m - 1
  Color color_of_mask(std::uint32_t mask) const;

  const std::vector<std::uint8_t>& cells() const { return cells_; }

  bool operator==(const SetColoring&) const = default;

 private:
  int m_;
  int color_count_;
  std::vector<std::uint8_t> cells_;
};

// Streams canonical colorings of the nonempty subsets of [m] (cells in
// ascending mask order, first-occurrence canonical form). Refuses ground
// sets with more than max_cells cells: the c^(2^m-1) stream beyond that is
// infeasible and must fail loudly.
class SetColoringEnumerator {
 public:
  SetColoringEnumerator(int m, int c, std::size_t max_cells = 31);
  std::optional<SetColoring> next();

 private:
  int m_;
  int c_;
  bool done_ = false;
  bool started_ = false;
  std::vector<std::uint8_t> cells_;
};

}  // namespace apsum
