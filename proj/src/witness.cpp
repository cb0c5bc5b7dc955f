#include "apsum/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include "apsum/errors.hpp"

namespace apsum {

// ---- ColorView -------------------------------------------------------------

ColorView::ColorView(const TableColoring& table)
    : bound_(table.domain()),
      fn_([&table](const Bigint& x) { return table.color(x.convert_to<int>()); }) {}

ColorView::ColorView(const OracleColoring& oracle, Bigint bound)
    : bound_(std::move(bound)), fn_([&oracle](const Bigint& x) { return oracle.color(x); }) {}

// ---- monochromatic AP / Brauer search ---------------------------------------

std::optional<ApWitness> find_mono_ap(const TableColoring& coloring, int l) {
  if (l < 3) throw std::invalid_argument("find_mono_ap: length must be >= 3");
  const int p = coloring.domain();
  for (int a = 1; a <= p; ++a) {
    for (int d = 1; a + (l - 1) * d <= p; ++d) {
      const Color gamma = coloring.color(a);
      bool mono = true;
      for (int s = 1; s < l && mono; ++s)
        mono = coloring.color(a + s * d) == gamma;
      if (mono) return ApWitness{Progression(a, d, l), gamma};
    }
  }
  return std::nullopt;
}

std::optional<BrauerWitness> find_brauer(const TableColoring& coloring, int l) {
  if (l < 3) throw std::invalid_argument("find_brauer: length must be >= 3");
  const int p = coloring.domain();
  for (int a = 1; a <= p; ++a) {
    for (int d = 1; a + (l - 1) * d <= p; ++d) {
      const Color gamma = coloring.color(a);
      if (coloring.color(d) != gamma) continue;
      bool mono = true;
      for (int s = 1; s < l && mono; ++s)
        mono = coloring.color(a + s * d) == gamma;
      if (mono) return BrauerWitness{Progression(a, d, l), gamma};
    }
  }
  return std::nullopt;
}

bool check_ap_witness(const TableColoring& coloring, const ApWitness& w) {
  for (const Bigint& t : w.progression.terms()) {
    if (t < 1 || t > coloring.domain()) return false;
    if (coloring.color(t.convert_to<int>()) != w.gamma) return false;
  }
  return true;
}

bool check_brauer_witness(const TableColoring& coloring, const BrauerWitness& w) {
  const Bigint& d = w.progression.diff();
  if (d > coloring.domain()) return false;
  if (coloring.color(d.convert_to<int>()) != w.gamma) return false;
  return check_ap_witness(coloring, ApWitness{w.progression, w.gamma});
}

// ---- FS-system search --------------------------------------------------------

namespace {

// Partial sums are tracked as (first, diff) pairs over machine integers;
// everything in a table-coloring search fits comfortably (all colored points
// are <= p).
struct Lin {
  long long first = 0;
  long long diff = 0;
};

struct FsSearch {
  const TableColoring& coloring;
  int n;
  int l;
  bool brauer;
  long long p;
  Color gamma = 0;
  // exact_total, when positive, demands sum of last terms == exact_total
  // (used by the incremental number search: a fresh witness in [p] must
  // have its full sum end exactly at p).
  long long exact_total = 0;

  std::vector<Progression> chosen;
  std::vector<Lin> sums;  // subset sums over chosen, entry 0 is the empty sum
  long long total_last = 0;

  explicit FsSearch(const TableColoring& col, int n_, int l_, bool brauer_)
      : coloring(col), n(n_), l(l_), brauer(brauer_), p(col.domain()) {
    sums.push_back({0, 0});
  }

  bool term_ok(long long first, long long diff) const {
    const long long last = first + static_cast<long long>(l - 1) * diff;
    if (last > p) return false;
    for (int s = 0; s < l; ++s) {
      if (coloring.color(static_cast<int>(first + s * diff)) != gamma) return false;
    }
    if (brauer) {
      if (diff > p) return false;
      if (coloring.color(static_cast<int>(diff)) != gamma) return false;
    }
    return true;
  }

  // True once a full witness is assembled into `chosen`.
  bool descend(int j) {
    if (j > n) return true;
    const long long r = n - j;  // members still to pick after this one
    // Future members each strictly exceed this one termwise, so their last
    // terms are at least last+1, last+2, ...; the full sum of last terms
    // must stay within p (and hit exact_total exactly, when demanded).
    const long long budget = (exact_total > 0 ? exact_total : p) - total_last;
    const Progression* prev = chosen.empty() ? nullptr : &chosen.back();
    const long long first_lo = prev ? prev->first().convert_to<long long>() + 1 : 1;

    for (long long first = first_lo;; ++first) {
      const long long min_last_here = first + (l - 1);  // diff = 1
      if (min_last_here * (r + 1) + r * (r + 1) / 2 > budget) break;
      for (long long diff = 1;; ++diff) {
        const long long last = first + static_cast<long long>(l - 1) * diff;
        if (last * (r + 1) + r * (r + 1) / 2 > budget) break;
        if (r == 0 && exact_total > 0 && last != budget) continue;
        if (prev && !(first > prev->first().convert_to<long long>() &&
                      last > prev->last().convert_to<long long>()))
          continue;
        // All sums gaining this member must stay colored gamma inside [p].
        bool ok = true;
        const std::size_t base = sums.size();
        for (std::size_t i = 0; i < base && ok; ++i)
          ok = term_ok(sums[i].first + first, sums[i].diff + diff);
        if (!ok) continue;

        chosen.emplace_back(first, diff, l);
        for (std::size_t i = 0; i < base; ++i)
          sums.push_back({sums[i].first + first, sums[i].diff + diff});
        total_last += last;
        if (descend(j + 1)) return true;
        total_last -= last;
        sums.resize(base);
        chosen.pop_back();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<FsSystemWitness> find_fs_system(const TableColoring& coloring, int n, int l,
                                              bool brauer) {
  if (n < 1) throw std::invalid_argument("find_fs_system: need n >= 1");
  if (l < 3) throw std::invalid_argument("find_fs_system: length must be >= 3");
  FsSearch search(coloring, n, l, brauer);
  for (Color gamma = 1; gamma <= coloring.color_count(); ++gamma) {
    search.gamma = gamma;
    if (search.descend(1))
      return FsSystemWitness{std::move(search.chosen), gamma, brauer};
  }
  return std::nullopt;
}

std::optional<FsSystemWitness> find_fs_system_ending_at(const TableColoring& coloring, int n,
                                                        int l, bool brauer, int total_last,
                                                        Color gamma) {
  FsSearch search(coloring, n, l, brauer);
  search.gamma = gamma;
  search.exact_total = total_last;
  if (search.descend(1)) return FsSystemWitness{std::move(search.chosen), gamma, brauer};
  return std::nullopt;
}

// ---- FS-system verification --------------------------------------------------

std::string FsViolation::describe() const {
  std::string where = "C=" + std::to_string(c_mask) + (s > 0 ? " s=" + std::to_string(s) : "");
  switch (kind) {
    case Kind::Order: return "order chain broken before member " + std::to_string(s);
    case Kind::MaxBound: return "full sum " + value.str() + " exceeds the domain";
    case Kind::TermDomain: return where + ": term " + value.str() + " outside the domain";
    case Kind::TermColor: return where + ": term " + value.str() + " miscolored";
    case Kind::DiffDomain: return where + ": difference " + value.str() + " outside the domain";
    case Kind::DiffColor: return where + ": difference " + value.str() + " miscolored";
  }
  return "unknown";
}

FsVerifyReport verify_fs_system(const ColorView& view, const FsSystemWitness& witness) {
  const auto& qs = witness.progressions;
  if (qs.empty()) throw std::invalid_argument("verify_fs_system: empty witness");
  const int l = qs.front().length();
  for (const Progression& q : qs)
    if (q.length() != l) throw std::invalid_argument("verify_fs_system: mixed lengths");
  const int n = static_cast<int>(qs.size());
  if (n > 30) throw ResourceError("verify_fs_system: too many progressions");

  FsVerifyReport report;
  auto flag = [&report](FsViolation v) {
    report.valid = false;
    report.violations.push_back(std::move(v));
  };

  for (int i = 0; i + 1< n; ++i) {
    if (!precedes_by_terms(qs[i], qs[i + 1]))
      flag({FsViolation::Kind::Order, 0, i + 2, Bigint(0)});
  }

  Bigint full = 0;
  for (const Progression& q : qs) full += q.last();
  if (full > view.bound()) flag({FsViolation::Kind::MaxBound, (1u << n) - 1, l, full});

  const std::uint64_t masks = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= masks; ++mask) {
    const Progression sum = sum_over(qs, IndexSet::from_mask(mask));
    for (int s = 1; s <= l; ++s) {
      const Bigint v = sum.term(s);
      if (!view.in_domain(v)) {
        flag({FsViolation::Kind::TermDomain, mask, s, v});
        continue;
      }
      if (view.color(v) != witness.gamma) flag({FsViolation::Kind::TermColor, mask, s, v});
    }
    if (witness.brauer) {
      const Bigint d = sum.diff();
      if (!view.in_domain(d)) {
        flag({FsViolation::Kind::DiffDomain, mask, 0, d});
      } else if (view.color(d) != witness.gamma) {
        flag({FsViolation::Kind::DiffColor, mask, 0, d});
      }
    }
  }
  return report;
}

// ---- block witnesses over subset colorings ------------------------------------

namespace {

struct BlockSearch {
  const SetColoring& sc;
  int n;
  std::uint32_t all;
  Color gamma = 0;
  std::vector<std::uint32_t> blocks;
  std::vector<std::uint32_t> unions;  // all nonempty unions of chosen blocks

  explicit BlockSearch(const SetColoring& sc_, int n_)
      : sc(sc_), n(n_), all((std::uint32_t{1} << sc_.ground_size()) - 1) {}

  static int high_bit(std::uint32_t x) { return 31 - __builtin_clz(x); }

  bool descend(int j) {
    if (j > n) return true;
    const std::uint32_t start =
        blocks.empty() ? 1 : (std::uint32_t{1} << (high_bit(blocks.back()) + 1));
    for (std::uint32_t mask = start; mask <= all; ++mask) {
      if (!blocks.empty()) {
        const std::uint32_t below = (std::uint32_t{1} << (high_bit(blocks.back()) + 1)) - 1;
        if (mask & below) continue;  // block order: lowest bit above previous highest
      }
      const Color g = blocks.empty() ? sc.color_of_mask(mask) : gamma;
      if (sc.color_of_mask(mask) != g) continue;
      bool ok = true;
      const std::size_t base = unions.size();
      for (std::size_t i = 0; i < base && ok; ++i)
        ok = sc.color_of_mask(unions[i] | mask) == g;
      if (!ok) continue;

      if (blocks.empty()) gamma = g;
      blocks.push_back(mask);
      for (std::size_t i = 0; i < base; ++i) unions.push_back(unions[i] | mask);
      unions.push_back(mask);
      if (descend(j + 1)) return true;
      unions.resize(base);
      blocks.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<BlockWitness> find_union_blocks(const SetColoring& sc, int n) {
  if (n < 1) throw std::invalid_argument("find_union_blocks: need n >= 1");
  if (n > sc.ground_size()) return std::nullopt;  // n ordered blocks need n elements
  BlockSearch search(sc, n);
  if (!search.descend(1)) return std::nullopt;
  BlockWitness w{{}, search.gamma};
  w.blocks.reserve(search.blocks.size());
  for (std::uint32_t mask : search.blocks) w.blocks.push_back(IndexSet::from_mask(mask));
  return w;
}

bool check_block_witness(const SetColoring& sc, const BlockWitness& w) {
  if (w.blocks.empty()) return false;
  for (std::size_t i = 0; i + 1 < w.blocks.size(); ++i)
    if (!w.blocks[i].before(w.blocks[i + 1])) return false;
  for (const IndexSet& u : nonempty_unions(w.blocks)) {
    if (u.max() > sc.ground_size()) return false;
    if (sc.color_of_mask(static_cast<std::uint32_t>(u.mask())) != w.gamma) return false;
  }
  return true;
}

// ---- finite Hindman block extraction ------------------------------------------

namespace {

struct HindmanSearch {
  std::span<const Bigint> values;
  const OracleColoring& oracle;
  int r;
  std::uint64_t all;
  Color gamma = 0;
  std::vector<std::uint64_t> blocks;
  std::vector<Bigint> block_sums;
  std::vector<Bigint> fs;  // finite sums of the chosen block sums

  HindmanSearch(std::span<const Bigint> values_, const OracleColoring& oracle_, int r_)
      : values(values_), oracle(oracle_), r(r_),
        all((std::uint64_t{1} << values_.size()) - 1) {}

  static int high_bit(std::uint64_t x) { return 63 - __builtin_clzll(x); }

  Bigint mask_sum(std::uint64_t mask) const {
    Bigint sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (mask >> i & 1) sum += values[i];
    return sum;
  }

  bool descend(int j) {
    if (j > r) return true;
    const std::uint64_t start =
        blocks.empty() ? 1 : (std::uint64_t{1} << (high_bit(blocks.back()) + 1));
    for (std::uint64_t mask = start; mask <= all; ++mask) {
      if (!blocks.empty()) {
        const std::uint64_t below = (std::uint64_t{1} << (high_bit(blocks.back()) + 1)) - 1;
        if (mask & below) continue;
      }
      const Bigint b = mask_sum(mask);
      const Color g = blocks.empty() ? oracle.color(b) : gamma;
      if (oracle.color(b) != g) continue;
      bool ok = true;
      const std::size_t base = fs.size();
      for (std::size_t i = 0; i < base && ok; ++i)
        ok = oracle.color(fs[i] + b) == g;
      if (!ok) continue;

      if (blocks.empty()) gamma = g;
      blocks.push_back(mask);
      block_sums.push_back(b);
      for (std::size_t i = 0; i < base; ++i) fs.push_back(fs[i] + b);
      fs.push_back(b);
      if (descend(j + 1)) return true;
      fs.resize(base);
      block_sums.pop_back();
      blocks.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<HindmanWitness> find_hindman_blocks(std::span<const Bigint> values,
                                                  const OracleColoring& oracle, int r,
                                                  const HindmanConfig& config) {
  if (r < 1) throw std::invalid_argument("find_hindman_blocks: need r >= 1");
  if (values.empty()) throw std::invalid_argument("find_hindman_blocks: no values");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] >= values[i + 1])
      throw std::invalid_argument("find_hindman_blocks: values must be strictly increasing");
  if (static_cast<int>(values.size()) > config.max_ground)
    throw ResourceError("find_hindman_blocks: ground set of " + std::to_string(values.size()) +
                        " values exceeds cap " + std::to_string(config.max_ground));
  if (r > static_cast<int>(values.size())) return std::nullopt;

  HindmanSearch search(values, oracle, r);
  if (!search.descend(1)) return std::nullopt;
  HindmanWitness w{{}, std::move(search.block_sums), search.gamma};
  w.blocks.reserve(search.blocks.size());
  for (std::uint64_t mask : search.blocks) w.blocks.push_back(IndexSet::from_mask(mask));
  return w;
}

bool check_hindman_witness(std::span<const Bigint> values, const OracleColoring& oracle,
                           const HindmanWitness& w) {
  if (w.blocks.empty() || w.blocks.size() != w.sums.size()) return false;
  for (std::size_t i = 0; i + 1 < w.blocks.size(); ++i)
    if (!w.blocks[i].before(w.blocks[i + 1])) return false;
  for (std::size_t j = 0; j < w.blocks.size(); ++j) {
    Bigint sum = 0;
    for (int i : w.blocks[j].elements()) {
      if (i > static_cast<int>(values.size())) return false;
      sum += values[static_cast<std::size_t>(i) - 1];
    }
    if (sum != w.sums[j]) return false;
  }
  for (const Bigint& v : finite_sums(ValueSet(w.sums)).elements())
    if (oracle.color(v) != w.gamma) return false;
  return true;
}

}  // namespace apsum
