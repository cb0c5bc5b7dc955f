#include "apsum/numbers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <omp.h>

#include "apsum/errors.hpp"
#include "apsum/reference.hpp"
#include "apsum/version.hpp"

namespace apsum {

// ---- query -------------------------------------------------------------------

std::string kind_name(NumberKind kind) {
  switch (kind) {
    case NumberKind::W: return "W";
    case NumberKind::WB: return "WB";
    case NumberKind::Hind: return "HIND";
    case NumberKind::F: return "F";
  }
  return "?";
}

NumberKind kind_from_name(std::string_view name) {
  if (name == "W") return NumberKind::W;
  if (name == "WB") return NumberKind::WB;
  if (name == "HIND") return NumberKind::Hind;
  if (name == "F") return NumberKind::F;
  throw std::invalid_argument("unknown number kind: " + std::string(name));
}

void NumberQuery::validate() const {
  if (c < 1) throw std::invalid_argument("number query: need c >= 1");
  switch (kind) {
    case NumberKind::W:
    case NumberKind::WB:
      if (l < 3) throw std::invalid_argument("number query: need l >= 3");
      break;
    case NumberKind::Hind:
      if (n < 1) throw std::invalid_argument("number query: need n >= 1");
      break;
    case NumberKind::F:
      if (n < 1) throw std::invalid_argument("number query: need n >= 1");
      if (l < 3) throw std::invalid_argument("number query: need l >= 3");
      break;
  }
}

std::string NumberQuery::display() const {
  switch (kind) {
    case NumberKind::W: return "W(" + std::to_string(l) + "," + std::to_string(c) + ")";
    case NumberKind::WB: return "WB(" + std::to_string(l) + "," + std::to_string(c) + ")";
    case NumberKind::Hind: return "Hind(" + std::to_string(n) + "," + std::to_string(c) + ")";
    case NumberKind::F:
      return "f(" + std::to_string(n) + "," + std::to_string(l) + "," + std::to_string(c) + ")";
  }
  return "?";
}

std::string NumberQuery::file_stem() const {
  std::string out = kind_name(kind);
  if (kind == NumberKind::Hind || kind == NumberKind::F) out += "_n" + std::to_string(n);
  if (kind != NumberKind::Hind) out += "_l" + std::to_string(l);
  out += "_c" + std::to_string(c);
  return out;
}

// ---- per-kind incremental avoidance checks ------------------------------------
//
// Each check answers: does coloring cell `t` with color `k` complete a
// witness? All earlier cells are already colored and avoiding, and every
// witness predicate here is monotone under extension, so a fresh witness
// must involve the new cell; that is what makes the checks complete.

namespace {

// Monochromatic l-AP ending at t (the new point is the largest, hence last).
struct WCheck {
  int l;
  bool operator()(const std::vector<std::uint8_t>& cells, int t, int k) const {
    for (int d = 1; t - (l - 1) * d >= 1; ++d) {
      bool mono = true;
      for (int s = 1; s <= l - 1 && mono; ++s) mono = cells[t - s * d - 1] == k;
      if (mono) return false;
    }
    return true;
  }
};

// As W, but the common difference must carry the color as well. d < t always
// (a >= 1 forces (l-1)d <= t-1), so d is an already-colored point.
struct WbCheck {
  int l;
  bool operator()(const std::vector<std::uint8_t>& cells, int t, int k) const {
    for (int d = 1; t - (l - 1) * d >= 1; ++d) {
      if (cells[d - 1] != k) continue;
      bool mono = true;
      for (int s = 1; s <= l - 1 && mono; ++s) mono = cells[t - s * d - 1] == k;
      if (mono) return false;
    }
    return true;
  }
};

// FS-system witness: a fresh one at domain t has colored points up to its
// full-sum maximum, which must then be exactly t, with gamma = color(t) = k.
struct FCheck {
  int n, l, c;
  bool operator()(const std::vector<std::uint8_t>& cells, int t, int k) const {
    std::vector<std::uint8_t> with(cells);
    with.push_back(static_cast<std::uint8_t>(k));
    TableColoring col(c, std::move(with));
    return !find_fs_system_ending_at(col, n, l, /*brauer=*/false, t, k).has_value();
  }
};

// Block witness over subset cells: t is a subset mask, and ordered blocks
// unioning to t cut the sorted bits of t into n contiguous nonempty groups.
// The full union is the numerically largest cell of the witness, so fresh
// witnesses complete exactly when t is colored.
struct HindCheck {
  int n;
  bool operator()(const std::vector<std::uint8_t>& cells, int t, int k) const {
    const std::uint32_t mask = static_cast<std::uint32_t>(t);
    const int pc = std::popcount(mask);
    if (pc < n) return true;

    std::uint32_t bits[32];
    int nb = 0;
    for (int i = 0; i < 32; ++i)
      if (mask >> i & 1) bits[nb++] = std::uint32_t{1} << i;

    std::uint32_t blocks[32];
    auto color_of = [&](std::uint32_t u) -> int {
      return u == mask ? k : cells[u - 1];  // strict submasks are earlier cells
    };
    // Walk every way to cut the bit sequence into n groups.
    auto cut = [&](auto&& self, int group, int from) -> bool {
      if (group == n) {
        if (from != nb) return false;
        for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << n); ++pick) {
          std::uint32_t u = 0;
          for (int j = 0; j < n; ++j)
            if (pick >> j & 1) u |= blocks[j];
          if (color_of(u) != k) return false;
        }
        return true;  // every union colored k: witness
      }
      const int remaining_groups = n - group - 1;
      std::uint32_t acc = 0;
      for (int end = from + 1; end + remaining_groups <= nb; ++end) {
        acc |= bits[end - 1];
        blocks[group] = acc;
        if (self(self, group + 1, end)) return true;
      }
      return false;
    };
    return !cut(cut, 0, 0);
  }
};

// ---- the DFS engine ------------------------------------------------------------

template <class Check>
struct Dfs {
  int c;
  int depth_cap;
  std::uint64_t max_nodes;
  Check check;

  SearchStats stats;
  std::vector<std::uint8_t> cells;
  std::vector<std::uint8_t> best;
  bool out_of_budget = false;
  bool depth_capped = false;

  int collect_depth = -1;  // when >= 0, stop and record prefixes at this depth
  std::vector<std::vector<std::uint8_t>>* sink = nullptr;
  bool count_root = true;

  void explore(int max_used) {
    if (count_root) {
      ++stats.nodes;
      if (static_cast<int>(cells.size()) > stats.deepest) {
        stats.deepest = static_cast<int>(cells.size());
        best = cells;
      }
    }
    count_root = true;
    if (collect_depth >= 0 && static_cast<int>(cells.size()) == collect_depth) {
      if (sink) sink->push_back(cells);
      return;
    }
    if (static_cast<int>(cells.size()) >= depth_cap) {
      depth_capped = true;
      return;
    }
    if (stats.nodes >= max_nodes) {
      out_of_budget = true;
      return;
    }
    const int t = static_cast<int>(cells.size()) + 1;
    const int top = std::min(c, max_used + 1);
    for (int k = 1; k <= top; ++k) {
      if (check(cells, t, k)) {
        cells.push_back(static_cast<std::uint8_t>(k));
        explore(std::max(max_used, k));
        cells.pop_back();
        if (out_of_budget) return;
      }
    }
  }

  bool exhausted() const { return !out_of_budget && !depth_capped; }
};

struct RawRun {
  SearchStats stats;
  std::vector<std::uint8_t> best;
  bool budget_exhausted = false;
};

int prefix_max(const std::vector<std::uint8_t>& cells) {
  int m = 0;
  for (std::uint8_t v : cells) m = std::max<int>(m, v);
  return m;
}

template <class Check>
RawRun run_full(const Check& check, int c, int depth_cap, std::uint64_t max_nodes) {
  Dfs<Check> dfs{c, depth_cap, max_nodes, check};
  dfs.explore(0);
  RawRun out;
  out.stats = dfs.stats;
  out.stats.exhausted = dfs.exhausted();
  out.best = std::move(dfs.best);
  out.budget_exhausted = dfs.out_of_budget || dfs.depth_capped;
  return out;
}

template <class Check>
RawRun run_prefix_phase(const Check& check, int c, int split_depth, std::uint64_t max_nodes,
                        std::vector<std::vector<std::uint8_t>>& prefixes) {
  Dfs<Check> dfs{c, split_depth + 1, max_nodes, check};
  dfs.collect_depth = split_depth;
  dfs.sink = &prefixes;
  dfs.explore(0);
  RawRun out;
  out.stats = dfs.stats;
  out.stats.exhausted = dfs.exhausted();
  out.best = std::move(dfs.best);
  out.budget_exhausted = dfs.out_of_budget;
  return out;
}

template <class Check>
RawRun run_subtree(const Check& check, int c, const std::vector<std::uint8_t>& prefix,
                   int depth_cap, std::uint64_t max_nodes) {
  Dfs<Check> dfs{c, depth_cap, max_nodes, check};
  dfs.cells = prefix;
  dfs.count_root = false;  // the prefix itself is counted by the prefix phase
  dfs.stats.deepest = static_cast<int>(prefix.size());
  dfs.best = prefix;
  dfs.explore(prefix_max(prefix));
  RawRun out;
  out.stats = dfs.stats;
  out.stats.exhausted = dfs.exhausted();
  out.best = std::move(dfs.best);
  out.budget_exhausted = dfs.out_of_budget || dfs.depth_capped;
  return out;
}

// Dispatch a callable over the query's checker type.
template <class Fn>
auto with_check(const NumberQuery& q, const SearchLimits& limits, Fn&& fn) {
  switch (q.kind) {
    case NumberKind::W: return fn(WCheck{q.l}, limits.max_depth);
    case NumberKind::WB: return fn(WbCheck{q.l}, limits.max_depth);
    case NumberKind::F: return fn(FCheck{q.n, q.l, q.c}, limits.max_depth);
    case NumberKind::Hind: {
      const int cells = (1 << limits.hind_max_ground) - 1;
      return fn(HindCheck{q.n}, std::min(limits.max_depth, cells));
    }
  }
  throw std::logic_error("bad kind");
}

std::string now_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

// Largest ground size whose full cell range is within `depth` cells.
int hind_ground_of_depth(int depth) {
  int m = 0;
  while ((1 << (m + 1)) - 1 <= depth) ++m;
  return m;
}

Evidence make_evidence(const NumberQuery& q, const std::vector<std::uint8_t>& best) {
  Evidence ev;
  if (q.kind == NumberKind::Hind) {
    const int m = hind_ground_of_depth(static_cast<int>(best.size()));
    if (m >= 1) {
      std::vector<std::uint8_t> cells(best.begin(), best.begin() + ((1 << m) - 1));
      ev.set_coloring = SetColoring(m, q.c, std::move(cells));
    }
  } else if (!best.empty()) {
    ev.coloring = TableColoring(q.c, best);
  }
  return ev;
}

std::uint64_t value_from_deepest(const NumberQuery& q, int deepest) {
  if (q.kind == NumberKind::Hind) return static_cast<std::uint64_t>(hind_ground_of_depth(deepest)) + 1;
  return static_cast<std::uint64_t>(deepest) + 1;
}

void hind_cross_check(const NumberQuery& q, std::uint64_t value, const Evidence& ev,
                      const SearchLimits& limits) {
  // The subset-level search stands in for colorings of FS(A); re-derive the
  // same answer on the concrete ground set {1, 2, 4, ...} at the integer
  // level before trusting an exact value.
  if (ev.set_coloring && !integer_level_avoids(*ev.set_coloring, q.n))
    throw std::logic_error("Hind cross-check: subset-level evidence fails at the integer level");
  if (integer_level_hind_has_avoiding(static_cast<int>(value), q.n, q.c, limits.max_nodes))
    throw std::logic_error(
        "Hind cross-check: integer-level search finds an avoiding coloring at the claimed value");
}

ComputeResult assemble_result(const NumberQuery& q, const RawRun& run,
                              const SearchLimits& limits) {
  ComputeResult result;
  result.stats = run.stats;
  result.budget_exhausted = run.budget_exhausted;

  Evidence ev = make_evidence(q, run.best);
  const std::uint64_t value = value_from_deepest(q, run.stats.deepest);
  result.lower = make_certificate(q, Claim::LowerBound, value, ev, run.stats);
  if (run.stats.exhausted) {
    if (q.kind == NumberKind::Hind) hind_cross_check(q, value, ev, limits);
    result.exact = make_certificate(q, Claim::Exact, value, std::move(ev), run.stats);
  }
  return result;
}

}  // namespace

Certificate make_certificate(const NumberQuery& query, Claim claim, std::uint64_t value,
                             Evidence evidence, const SearchStats& stats) {
  Certificate cert;
  cert.schema = kSchemaVersion;
  cert.query = query;
  cert.claim = claim;
  cert.value = value;
  cert.evidence = std::move(evidence);
  cert.stats = stats;
  cert.timestamp = now_utc();
  cert.engine = kEngineVersion;
  return cert;
}

ComputeResult compute_number(const NumberQuery& query, const SearchLimits& limits) {
  query.validate();
  RawRun run = with_check(query, limits, [&](auto check, int depth_cap) {
    return run_full(check, query.c, depth_cap, limits.max_nodes);
  });
  return assemble_result(query, run, limits);
}

// ---- certificate verification ---------------------------------------------------

namespace {

bool evidence_avoids(const NumberQuery& q, const Evidence& ev, std::string& reason) {
  switch (q.kind) {
    case NumberKind::W: {
      if (!ev.coloring) { reason = "missing coloring evidence"; return false; }
      if (find_mono_ap(*ev.coloring, q.l)) { reason = "evidence contains a monochromatic AP"; return false; }
      return true;
    }
    case NumberKind::WB: {
      if (!ev.coloring) { reason = "missing coloring evidence"; return false; }
      if (find_brauer(*ev.coloring, q.l)) { reason = "evidence contains a Brauer configuration"; return false; }
      return true;
    }
    case NumberKind::F: {
      if (!ev.coloring) { reason = "missing coloring evidence"; return false; }
      if (find_fs_system(*ev.coloring, q.n, q.l, false)) { reason = "evidence contains an FS-system witness"; return false; }
      return true;
    }
    case NumberKind::Hind: {
      if (!ev.set_coloring) { reason = "missing set-coloring evidence"; return false; }
      if (find_union_blocks(*ev.set_coloring, q.n)) { reason = "evidence contains ordered monochromatic blocks"; return false; }
      return true;
    }
  }
  reason = "bad kind";
  return false;
}

}  // namespace

CertCheck verify_certificate(const Certificate& cert) {
  CertCheck check;
  try {
    cert.query.validate();
    if (cert.value < 1) {
      check.valid = false;
      check.reason = "value must be positive";
      return check;
    }
    // value 1 claims need no evidence: there is nothing to color at [0].
    if (cert.value == 1) return check;

    const int expected =
        static_cast<int>(cert.value) - 1;
    if (cert.query.kind == NumberKind::Hind) {
      if (!cert.evidence.set_coloring ||
          cert.evidence.set_coloring->ground_size() != expected) {
        check.valid = false;
        check.reason = "evidence ground size does not match value-1";
        return check;
      }
    } else {
      if (!cert.evidence.coloring || cert.evidence.coloring->domain() != expected) {
        check.valid = false;
        check.reason = "evidence domain does not match value-1";
        return check;
      }
      if (cert.evidence.coloring->color_count() != cert.query.c) {
        check.valid = false;
        check.reason = "evidence color count does not match query";
        return check;
      }
    }
    std::string reason;
    if (!evidence_avoids(cert.query, cert.evidence, reason)) {
      check.valid = false;
      check.reason = reason;
    }
  } catch (const std::exception& e) {
    check.valid = false;
    check.reason = std::string("malformed certificate: ") + e.what();
  }
  return check;
}

// ---- sharding ---------------------------------------------------------------------

std::size_t count_search_prefixes(const NumberQuery& query, int split_depth) {
  query.validate();
  if (split_depth < 1) throw std::invalid_argument("split depth must be >= 1");
  std::vector<std::vector<std::uint8_t>> prefixes;
  SearchLimits limits;
  with_check(query, limits, [&](auto check, int) {
    return run_prefix_phase(check, query.c, split_depth, limits.max_nodes, prefixes);
  });
  return prefixes.size();
}

ShardResult shard_search(const NumberQuery& query, const ShardSpec& spec,
                         const SearchLimits& limits) {
  query.validate();
  if (spec.begin > spec.end) throw std::invalid_argument("shard range reversed");

  std::vector<std::vector<std::uint8_t>> prefixes;
  with_check(query, limits, [&](auto check, int) {
    return run_prefix_phase(check, query.c, spec.split_depth, limits.max_nodes, prefixes);
  });
  if (spec.end > prefixes.size())
    throw std::invalid_argument("shard range extends past the prefix count");

  ShardResult result;
  result.begin = spec.begin;
  result.end = spec.end;
  result.prefix_count = prefixes.size();
  result.split_depth = spec.split_depth;
  result.stats.exhausted = true;

  for (std::size_t i = spec.begin; i < spec.end; ++i) {
    RawRun run = with_check(query, limits, [&](auto check, int depth_cap) {
      return run_subtree(check, query.c, prefixes[i], depth_cap, limits.max_nodes);
    });
    result.stats.nodes += run.stats.nodes;
    result.stats.exhausted = result.stats.exhausted && run.stats.exhausted;
    if (run.stats.deepest > result.stats.deepest) {
      result.stats.deepest = run.stats.deepest;
      result.deepest_cells = run.best;
    }
  }
  return result;
}

ShardResult merge_shards(std::span<const ShardResult> shards) {
  if (shards.empty()) throw std::invalid_argument("merge_shards: nothing to merge");
  std::vector<const ShardResult*> order;
  for (const ShardResult& s : shards)
    if (s.begin != s.end) order.push_back(&s);  // empty ranges are neutral

  ShardResult merged;
  merged.prefix_count = shards.front().prefix_count;
  merged.split_depth = shards.front().split_depth;
  merged.stats.exhausted = true;

  std::sort(order.begin(), order.end(),
            [](const ShardResult* a, const ShardResult* b) { return a->begin < b->begin; });
  std::size_t cursor = 0;
  for (const ShardResult* s : order) {
    if (s->prefix_count != merged.prefix_count || s->split_depth != merged.split_depth)
      throw std::invalid_argument("merge_shards: shards from different searches");
    if (s->begin < cursor) throw std::invalid_argument("merge_shards: overlapping shards");
    if (s->begin > cursor) throw std::invalid_argument("merge_shards: gap in shard coverage");
    cursor = s->end;
    merged.stats.nodes += s->stats.nodes;
    merged.stats.exhausted = merged.stats.exhausted && s->stats.exhausted;
    if (s->stats.deepest > merged.stats.deepest) {
      merged.stats.deepest = s->stats.deepest;
      merged.deepest_cells = s->deepest_cells;
    }
  }
  if (cursor != merged.prefix_count)
    throw std::invalid_argument("merge_shards: shards do not cover every prefix");
  merged.begin = 0;
  merged.end = merged.prefix_count;
  return merged;
}

ComputeResult compute_number_sharded(const NumberQuery& query, int threads, int split_depth,
                                     const SearchLimits& limits) {
  query.validate();
  if (threads < 1) throw std::invalid_argument("need at least one thread");

  std::vector<std::vector<std::uint8_t>> prefixes;
  RawRun prefix_phase = with_check(query, limits, [&](auto check, int) {
    return run_prefix_phase(check, query.c, split_depth, limits.max_nodes, prefixes);
  });

  if (prefixes.empty())  // the whole tree dies above the split depth
    return assemble_result(query, prefix_phase, limits);

  const std::size_t count = prefixes.size();
  std::vector<ShardResult> shards(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < count; ++i) {
    ShardSpec spec{split_depth, i, i + 1};
    shards[i] = shard_search(query, spec, limits);
  }
  ShardResult merged = merge_shards(shards);

  RawRun combined;
  combined.stats.nodes = prefix_phase.stats.nodes + merged.stats.nodes;
  combined.stats.exhausted = prefix_phase.stats.exhausted && merged.stats.exhausted;
  combined.budget_exhausted = !combined.stats.exhausted;
  if (merged.stats.deepest > prefix_phase.stats.deepest) {
    combined.stats.deepest = merged.stats.deepest;
    combined.best = merged.deepest_cells;
  } else {
    combined.stats.deepest = prefix_phase.stats.deepest;
    combined.best = prefix_phase.best;
  }
  return assemble_result(query, combined, limits);
}

}  // namespace apsum
