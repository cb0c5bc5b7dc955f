#include "apsum/coloring.hpp"

#include <algorithm>
#include <stdexcept>

#include "apsum/errors.hpp"

namespace apsum {

namespace {

// '1'-'9' then 'a'-'z': 35 printable colors. Beyond that, use JSON arrays.
constexpr int kMaxCharColors = 35;

char color_char(Color k) {
  if (k >= 1 && k <= 9) return static_cast<char>('0' + k);
  if (k >= 10 && k <= kMaxCharColors) return static_cast<char>('a' + k - 10);
  throw std::invalid_argument("coloring text form supports at most 35 colors");
}

Color char_color(char ch) {
  if (ch >= '1' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
  throw std::invalid_argument(std::string("bad color character '") + ch + "'");
}

// Shared by the two odometer enumerators: step `cells` to the next canonical
// word, where cell i may use colors 1..min(c, 1 + max of cells before i).
bool next_canonical_word(std::vector<std::uint8_t>& cells, int c) {
  const int n = static_cast<int>(cells.size());
  std::vector<std::uint8_t> premax(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    premax[i + 1] = std::max(premax[i], cells[i]);
  for (int i = n - 1; i >= 0; --i) {
    const int cap = std::min(c, premax[i] + 1);
    if (cells[i] < cap) {
      ++cells[i];
      std::fill(cells.begin() + i + 1, cells.end(), std::uint8_t{1});
      return true;
    }
  }
  return false;
}

}  // namespace

// ---- TableColoring ---------------------------------------------------------

TableColoring::TableColoring(int color_count, std::vector<std::uint8_t> cells)
    : color_count_(color_count), cells_(std::move(cells)) {
  if (color_count_ < 1) throw std::invalid_argument("TableColoring: need at least one color");
  if (color_count_ > 255) throw std::invalid_argument("TableColoring: at most 255 colors");
  for (std::uint8_t v : cells_)
    if (v < 1 || v > color_count_)
      throw std::invalid_argument("TableColoring: cell color outside [1,c]");
}

Color TableColoring::color(int x) const {
  if (x < 1 || x > domain())
    throw std::out_of_range("TableColoring::color: point " + std::to_string(x) +
                            " outside [1," + std::to_string(domain()) + "]");
  return cells_[static_cast<std::size_t>(x) - 1];
}

bool TableColoring::is_canonical() const {
  int max_seen = 0;
  for (std::uint8_t v : cells_) {
    if (v > max_seen + 1) return false;
    max_seen = std::max<int>(max_seen, v);
  }
  return true;
}

TableColoring TableColoring::canonicalized() const {
  std::vector<int> relabel(static_cast<std::size_t>(color_count_) + 1, 0);
  int next = 0;
  std::vector<std::uint8_t> out(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    int& slot = relabel[cells_[i]];
    if (slot == 0) slot = ++next;
    out[i] = static_cast<std::uint8_t>(slot);
  }
  return TableColoring(color_count_, std::move(out));
}

TableColoring TableColoring::parse(std::string_view text, int color_count) {
  std::vector<std::uint8_t> cells;
  cells.reserve(text.size());
  int max_color = 0;
  for (char ch : text) {
    const Color k = char_color(ch);
    max_color = std::max(max_color, k);
    cells.push_back(static_cast<std::uint8_t>(k));
  }
  if (color_count == 0) color_count = std::max(max_color, 1);
  if (max_color > color_count)
    throw std::invalid_argument("TableColoring::parse: cell color exceeds declared count");
  return TableColoring(color_count, std::move(cells));
}

std::string TableColoring::str() const {
  std::string out;
  out.reserve(cells_.size());
  for (std::uint8_t v : cells_) out.push_back(color_char(v));
  return out;
}

TableColoring extend(const TableColoring& partial, Color new_color) {
  int max_used = 0;
  for (std::uint8_t v : partial.cells()) max_used = std::max<int>(max_used, v);
  if (new_color < 1 || new_color > partial.color_count())
    throw std::invalid_argument("extend: color outside [1,c]");
  if (new_color > max_used + 1)
    throw std::invalid_argument("extend: color " + std::to_string(new_color) +
                                " skips ahead of first unused color " +
                                std::to_string(max_used + 1));
  std::vector<std::uint8_t> cells = partial.cells();
  cells.push_back(static_cast<std::uint8_t>(new_color));
  return TableColoring(partial.color_count(), std::move(cells));
}

// ---- CanonicalEnumerator ---------------------------------------------------

CanonicalEnumerator::CanonicalEnumerator(int p, int c) : p_(p), c_(c) {
  if (p < 1 || c < 1) throw std::invalid_argument("CanonicalEnumerator: p, c must be >= 1");
  cells_.assign(static_cast<std::size_t>(p), 1);
}

std::optional<TableColoring> CanonicalEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return TableColoring(c_, cells_);
  }
  if (!next_canonical_word(cells_, c_)) {
    done_ = true;
    return std::nullopt;
  }
  return TableColoring(c_, cells_);
}

// ---- OracleColoring --------------------------------------------------------

OracleColoring OracleColoring::modulus(std::uint64_t modulus, std::vector<Color> class_colors) {
  if (modulus < 1) throw std::invalid_argument("modulus rule: modulus must be >= 1");
  if (class_colors.size() != modulus)
    throw std::invalid_argument("modulus rule: need one color per residue class");
  OracleColoring o;
  o.kind_ = Kind::Modulus;
  o.modulus_ = modulus;
  o.table_ = std::move(class_colors);
  o.color_count_ = *std::max_element(o.table_.begin(), o.table_.end());
  for (Color k : o.table_)
    if (k < 1) throw std::invalid_argument("modulus rule: colors must be >= 1");
  return o;
}

OracleColoring OracleColoring::digit(std::uint32_t base, std::uint32_t position,
                                     std::vector<Color> digit_colors) {
  if (base < 2) throw std::invalid_argument("digit rule: base must be >= 2");
  if (digit_colors.size() != base)
    throw std::invalid_argument("digit rule: need one color per digit");
  OracleColoring o;
  o.kind_ = Kind::Digit;
  o.base_ = base;
  o.position_ = position;
  o.table_ = std::move(digit_colors);
  o.color_count_ = *std::max_element(o.table_.begin(), o.table_.end());
  for (Color k : o.table_)
    if (k < 1) throw std::invalid_argument("digit rule: colors must be >= 1");
  return o;
}

OracleColoring OracleColoring::seeded(std::uint64_t seed, int color_count) {
  if (color_count < 1) throw std::invalid_argument("seeded rule: need at least one color");
  OracleColoring o;
  o.kind_ = Kind::Seeded;
  o.seed_ = seed;
  o.color_count_ = color_count;
  return o;
}

OracleColoring OracleColoring::constant(Color color, int color_count) {
  if (color < 1) throw std::invalid_argument("constant rule: color must be >= 1");
  OracleColoring o = modulus(1, {color});
  o.color_count_ = std::max(color_count, color);
  return o;
}

OracleColoring OracleColoring::parity() { return modulus(2, {2, 1}); }

OracleColoring OracleColoring::residue(std::uint64_t m) {
  std::vector<Color> colors(m);
  for (std::uint64_t r = 0; r < m; ++r) colors[r] = static_cast<Color>(r + 1);
  return modulus(m, std::move(colors));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Platform-independent hash of a big value: FNV-1a over its decimal digits.
std::uint64_t hash_bigint(const Bigint& x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : x.str()) {
    h ^= static_cast<std::uint64_t>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Color OracleColoring::color(const Bigint& x) const {
  if (x < 1) throw std::invalid_argument("OracleColoring::color: point must be >= 1");
  switch (kind_) {
    case Kind::Modulus: {
      const Bigint r = x % modulus_;
      return table_[r.convert_to<std::size_t>()];
    }
    case Kind::Digit: {
      Bigint shifted = x;
      for (std::uint32_t i = 0; i < position_; ++i) shifted /= base_;
      const Bigint d = shifted % base_;
      return table_[d.convert_to<std::size_t>()];
    }
    case Kind::Seeded: {
      const std::uint64_t h = splitmix64(seed_ ^ hash_bigint(x));
      return static_cast<Color>(h % static_cast<std::uint64_t>(color_count_)) + 1;
    }
  }
  throw std::logic_error("OracleColoring: bad kind");
}

// ---- SetColoring -----------------------------------------------------------

SetColoring::SetColoring(int m, int color_count, std::vector<std::uint8_t> cells)
    : m_(m), color_count_(color_count), cells_(std::move(cells)) {
  if (m_ < 1 || m_ > 25) throw std::invalid_argument("SetColoring: ground size outside [1,25]");
  if (color_count_ < 1) throw std::invalid_argument("SetColoring: need at least one color");
  const std::size_t expect = (std::size_t{1} << m_) - 1;
  if (cells_.size() != expect)
    throw std::invalid_argument("SetColoring: expected " + std::to_string(expect) + " cells");
  for (std::uint8_t v : cells_)
    if (v < 1 || v > color_count_)
      throw std::invalid_argument("SetColoring: cell color outside [1,c]");
}

Color SetColoring::color_of_mask(std::uint32_t mask) const {
  if (mask == 0 || mask > cells_.size())
    throw std::out_of_range("SetColoring: mask outside [1, 2^m-1]");
  return cells_[mask - 1];
}

// ---- SetColoringEnumerator -------------------------------------------------

SetColoringEnumerator::SetColoringEnumerator(int m, int c, std::size_t max_cells)
    : m_(m), c_(c) {
  if (m < 1 || c < 1) throw std::invalid_argument("SetColoringEnumerator: m, c must be >= 1");
  const std::size_t cells = (std::size_t{1} << m) - 1;
  if (cells > max_cells)
    throw ResourceError("SetColoringEnumerator: 2^m-1 = " + std::to_string(cells) +
                        " cells exceeds cap " + std::to_string(max_cells));
  cells_.assign(cells, 1);
}

std::optional<SetColoring> SetColoringEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return SetColoring(m_, c_, cells_);
  }
  if (!next_canonical_word(cells_, c_)) {
    done_ = true;
    return std::nullopt;
  }
  return SetColoring(m_, c_, cells_);
}

}  // namespace apsum
