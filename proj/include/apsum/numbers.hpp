#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apsum/coloring.hpp"
#include "apsum/witness.hpp"

namespace apsum {

enum class NumberKind { W, WB, Hind, F };

std::string kind_name(NumberKind kind);
NumberKind kind_from_name(std::string_view name);

// Which number is being computed and with what parameters:
//   W(l,c), WB(l,c): l >= 3, c >= 1
//   Hind(n,c):       n >= 1, c >= 1
//   F(n,l,c):        n >= 1, l >= 3, c >= 1
struct NumberQuery {
  NumberKind kind;
  int n = 0;
  int l = 0;
  int c = 0;

  void validate() const;
  std::string display() const;   // e.g. "W(3,2)"
  std::string file_stem() const; // e.g. "W_l3_c2"
  bool operator==(const NumberQuery&) const = default;
};

struct SearchLimits {
  std::uint64_t max_nodes = 500'000'000;  // backtracking nodes before giving up
  int max_depth = 4096;                   // safety cap on the coloring domain
  int hind_max_ground = 6;                // largest ground set the Hind tree may reach
};

struct SearchStats {
  std::uint64_t nodes = 0;   // avoiding colorings visited
  int deepest = 0;           // largest domain with a surviving coloring
  bool exhausted = false;    // whole tree explored within budget
};

// Lower-bound evidence: a coloring of [value-1] admitting no witness.
struct Evidence {
  std::optional<TableColoring> coloring;      // W, WB, F
  std::optional<SetColoring> set_coloring;    // Hind (ground set of size value-1)
};

enum class Claim { LowerBound, Exact };

struct Certificate {
  int schema = 1;
  NumberQuery query;
  Claim claim = Claim::LowerBound;
  std::uint64_t value = 0;
  Evidence evidence;
  SearchStats stats;
  std::string timestamp;
  std::string engine;
};

Certificate make_certificate(const NumberQuery& query, Claim claim, std::uint64_t value,
                             Evidence evidence, const SearchStats& stats);

struct ComputeResult {
  std::optional<Certificate> exact;  // set when the search exhausted
  Certificate lower;                 // always present: best avoiding coloring found
  SearchStats stats;
  bool budget_exhausted = false;
};

// Depth-first backtracking over canonical avoiding colorings: a node at
// depth p is an avoiding coloring of [p], extended cell by cell. When the
// tree is exhausted the number equals (deepest avoiding depth) + 1 and an
// exact certificate is emitted; running out of budget yields the best
// lower bound with its evidence. For Hind the tree runs over set-coloring
// cells in ascending mask order, and an exact result is cross-checked by an
// independent integer-level search on the ground set {1, 2, 4, ...}.
ComputeResult compute_number(const NumberQuery& query, const SearchLimits& limits = {});

// Re-checks a certificate: lower-bound evidence must admit no witness; an
// exact certificate is checked at the boundary (evidence for value-1
// avoids). Malformed evidence is a parse error, reported as invalid with a
// reason.
struct CertCheck {
  bool valid = true;
  std::string reason;
};
CertCheck verify_certificate(const Certificate& cert);

// ---- sharded search ----------------------------------------------------
//
// The canonical avoiding colorings at a fixed small depth (the "prefixes",
// in DFS order) partition the search tree. A shard explores the subtrees of
// a contiguous range of prefixes; results merge associatively, and merging
// the full partition reproduces the unsharded run exactly.

struct ShardSpec {
  int split_depth = 3;
  std::size_t begin = 0;  // prefix index range [begin, end)
  std::size_t end = 0;
};

struct ShardResult {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t prefix_count = 0;  // total prefixes at split depth
  int split_depth = 0;
  SearchStats stats;
  std::vector<std::uint8_t> deepest_cells;  // deepest avoiding coloring seen
};

// Number of canonical avoiding prefixes at the split depth.
std::size_t count_search_prefixes(const NumberQuery& query, int split_depth);

ShardResult shard_search(const NumberQuery& query, const ShardSpec& spec,
                         const SearchLimits& limits = {});

// Merges shard results covering [0, prefix_count) without gaps or overlap;
// the merge is order-insensitive in outcome but validated for coverage.
ShardResult merge_shards(std::span<const ShardResult> shards);

// OpenMP fan-out over shards; identical result to the serial compute for
// any thread count.
ComputeResult compute_number_sharded(const NumberQuery& query, int threads,
                                     int split_depth = 3, const SearchLimits& limits = {});

}  // namespace apsum
