#include "apsum/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "apsum/errors.hpp"

namespace apsum {

namespace {

bool has_mono_ap(const std::vector<std::uint8_t>& cells, int l) {
  const int p = static_cast<int>(cells.size());
  for (int a = 1; a <= p; ++a) {
    for (int d = 1; a + (l - 1) * d <= p; ++d) {
      bool mono = true;
      for (int s = 1; s < l && mono; ++s) mono = cells[a + s * d - 1] == cells[a - 1];
      if (mono) return true;
    }
  }
  return false;
}

bool has_brauer(const std::vector<std::uint8_t>& cells, int l) {
  const int p = static_cast<int>(cells.size());
  for (int a = 1; a <= p; ++a) {
    for (int d = 1; a + (l - 1) * d <= p; ++d) {
      if (cells[d - 1] != cells[a - 1]) continue;
      bool mono = true;
      for (int s = 1; s < l && mono; ++s) mono = cells[a + s * d - 1] == cells[a - 1];
      if (mono) return true;
    }
  }
  return false;
}

// Brute-force FS-system test: enumerate all tuples of APs in [p], ordered
// termwise, and test every sum definitionally. No pruning beyond the domain
// bound; meant for small p only.
struct BruteFs {
  const std::vector<std::uint8_t>& cells;
  int n, l, p;
  std::vector<std::pair<int, int>> chosen;  // (first, diff)

  bool sums_ok(int gamma) const {
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << chosen.size()); ++mask) {
      long long first = 0, diff = 0;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        first += chosen[i].first;
        diff += chosen[i].second;
      }
      for (int s = 0; s < l; ++s) {
        const long long v = first + s * diff;
        if (v > p) return false;
        if (cells[v - 1] != gamma) return false;
      }
    }
    return true;
  }

  bool descend(std::size_t depth, int gamma) {
    if (depth == static_cast<std::size_t>(n)) return sums_ok(gamma);
    for (int first = 1; first <= p; ++first) {
      for (int diff = 1; first + (l - 1) * diff <= p; ++diff) {
        if (!chosen.empty()) {
          const auto [pf, pd] = chosen.back();
          if (!(first > pf && first + (l - 1) * diff > pf + (l - 1) * pd)) continue;
        }
        chosen.emplace_back(first, diff);
        if (descend(depth + 1, gamma)) return true;
        chosen.pop_back();
      }
    }
    return false;
  }
};

bool has_fs_system(const std::vector<std::uint8_t>& cells, int n, int l) {
  const int p = static_cast<int>(cells.size());
  int c = 0;
  for (std::uint8_t v : cells) c = std::max<int>(c, v);
  for (int gamma = 1; gamma <= c; ++gamma) {
    BruteFs brute{cells, n, l, p, {}};
    if (brute.descend(0, gamma)) return true;
  }
  return false;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void guard_scan_size(int p, int c) {
  const double bits = p * std::log2(static_cast<double>(c));
  if (bits > 40.0)
    throw ResourceError("naive scan of " + std::to_string(c) + "^" + std::to_string(p) +
                        " colorings is out of reach");
}

}  // namespace

std::vector<std::uint8_t> decode_coloring(std::uint64_t index, int p, int c) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    cells[i] = static_cast<std::uint8_t>(index % c + 1);
    index /= c;
  }
  return cells;
}

bool naive_has_witness(NumberKind kind, const std::vector<std::uint8_t>& cells, int n, int l) {
  switch (kind) {
    case NumberKind::W: return has_mono_ap(cells, l);
    case NumberKind::WB: return has_brauer(cells, l);
    case NumberKind::F: return has_fs_system(cells, n, l);
    case NumberKind::Hind:
      throw std::invalid_argument("naive_has_witness: Hind is not table-based");
  }
  return false;
}

std::optional<std::uint64_t> naive_first_avoiding(NumberKind kind, int p, int n, int l, int c) {
  guard_scan_size(p, c);
  const std::uint64_t total = pow_u64(c, p);
  for (std::uint64_t index = 0; index < total; ++index) {
    if (!naive_has_witness(kind, decode_coloring(index, p, c), n, l)) return index;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> naive_first_avoiding_omp(NumberKind kind, int p, int n, int l,
                                                      int c) {
  guard_scan_size(p, c);
  const std::uint64_t total = pow_u64(c, p);
  const std::uint64_t none = ~std::uint64_t{0};
  std::uint64_t found = none;
#pragma omp parallel for schedule(static) reduction(min : found)
  for (std::uint64_t index = 0; index < total; ++index) {
    if (index < found && !naive_has_witness(kind, decode_coloring(index, p, c), n, l))
      found = index;
  }
  if (found == none) return std::nullopt;
  return found;
}

std::uint64_t naive_number(NumberKind kind, int n, int l, int c, int p_cap, bool parallel) {
  for (int p = 1; p <= p_cap; ++p) {
    const auto avoiding = parallel ? naive_first_avoiding_omp(kind, p, n, l, c)
                                   : naive_first_avoiding(kind, p, n, l, c);
    if (!avoiding) return static_cast<std::uint64_t>(p);
  }
  throw ResourceError("naive_number: no answer up to the p cap");
}

// ---- integer-level Hind route -----------------------------------------------------
//
// Ground set A = {1, 2, 4, ..., 2^(m-1)}: FS(A) is exactly [2^m - 1] and a
// block's value sum lands on the integer whose binary digits are the block.
// These routines work with integer sums throughout; they never consult the
// subset-level machinery.

namespace {

// Does coloring integer t with color k complete a block witness? Blocks are
// read off the binary digits of t, cut into n ordered groups; union sums are
// integer sums of the per-block value totals.
bool integer_extension_completes(const std::vector<std::uint8_t>& cells, int t, int k, int n,
                                 int m) {
  const int pc = std::popcount(static_cast<unsigned>(t));
  if (pc < n) return false;

  long long values[32];
  int nb = 0;
  for (int i = 0; i < m; ++i)
    if (t >> i & 1) values[nb++] = 1LL << i;  // the ground values a_{i+1} = 2^i

  long long block_sum[32];
  auto color_of = [&](long long v) -> int {
    return v == t ? k : cells[static_cast<std::size_t>(v) - 1];
  };
  auto cut = [&](auto&& self, int group, int from) -> bool {
    if (group == n) {
      if (from != nb) return false;
      for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << n); ++pick) {
        long long sum = 0;
        for (int j = 0; j < n; ++j)
          if (pick >> j & 1) sum += block_sum[j];
        if (color_of(sum) != k) return false;
      }
      return true;
    }
    const int remaining = n - group - 1;
    long long acc = 0;
    for (int end = from + 1; end + remaining <= nb; ++end) {
      acc += values[end - 1];
      block_sum[group] = acc;
      if (self(self, group + 1, end)) return true;
    }
    return false;
  };
  return cut(cut, 0, 0);
}

struct IntegerHindDfs {
  int n, m, c;
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;
  bool truncated = false;
  std::vector<std::uint8_t> cells;
  std::optional<TableColoring> found;

  bool explore(int max_used) {
    ++nodes;
    if (static_cast<int>(cells.size()) == (1 << m) - 1) {
      found = TableColoring(c, cells);
      return true;
    }
    if (nodes >= max_nodes) {
      truncated = true;
      return false;
    }
    const int t = static_cast<int>(cells.size()) + 1;
    const int top = std::min(c, max_used + 1);
    for (int k = 1; k <= top; ++k) {
      if (integer_extension_completes(cells, t, k, n, m)) continue;
      cells.push_back(static_cast<std::uint8_t>(k));
      if (explore(std::max(max_used, k))) return true;
      cells.pop_back();
      if (truncated) return false;
    }
    return false;
  }
};

}  // namespace

bool integer_level_hind_has_avoiding(int m, int n, int c, std::uint64_t max_nodes,
                                     std::optional<TableColoring>* example) {
  if (m < 1 || m > 25) throw std::invalid_argument("integer-level Hind: m outside [1,25]");
  IntegerHindDfs dfs{n, m, c, max_nodes};
  const bool found = dfs.explore(0);
  if (dfs.truncated)
    throw ResourceError("integer-level Hind search exceeded its node budget");
  if (found && example) *example = dfs.found;
  return found;
}

bool integer_level_avoids(const SetColoring& sc, int n) {
  const int m = sc.ground_size();
  std::vector<std::uint8_t> cells(sc.cells());  // integer v <-> mask v
  // Exhaustive block-tuple scan through integer sums, no incremental tricks.
  std::vector<long long> sums;
  auto descend = [&](auto&& self, int depth, int min_low, Color gamma) -> bool {
    if (depth == n) return true;
    for (int mask = 1; mask < (1 << m); ++mask) {
      if (mask & ((1 << min_low) - 1)) continue;  // low bit must clear previous high bit
      long long value = 0;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1) value += 1LL << i;
      const Color g = depth == 0 ? cells[static_cast<std::size_t>(value) - 1] : gamma;
      if (cells[static_cast<std::size_t>(value) - 1] != g) continue;
      bool ok = true;
      const std::size_t base = sums.size();
      for (std::size_t i = 0; i < base && ok; ++i)
        ok = cells[static_cast<std::size_t>(sums[i] + value) - 1] == g;
      if (!ok) continue;
      for (std::size_t i = 0; i < base; ++i) sums.push_back(sums[i] + value);
      sums.push_back(value);
      const int high = 31 - std::countl_zero(static_cast<unsigned>(mask));
      if (self(self, depth + 1, high + 1, g)) return true;
      sums.resize(base);
    }
    return false;
  };
  return !descend(descend, 0, 0, 0);
}

}  // namespace apsum
