#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apsum/coloring.hpp"
#include "apsum/numbers.hpp"

namespace apsum {

// Serial reference implementations, deliberately naive: they enumerate all
// c^p colorings (no canonical reduction, no incremental pruning) and test
// witnesses by definitional double loops. They exist to cross-check the
// backtracking engine and as the baseline for the benchmarks. Keep them
// independent of the search code paths.

// True iff the explicit coloring contains the kind's witness. F uses the
// full sum-system predicate; Hind is not table-based and has its own
// routines below.
bool naive_has_witness(NumberKind kind, const std::vector<std::uint8_t>& cells, int n, int l);

// Smallest coloring index (colors as base-c digits, cell 1 least
// significant) of an avoiding coloring of [p], or empty if every coloring
// has a witness. The OpenMP variant scans the index space in parallel and
// reduces by minimum, so the result is identical to the serial scan.
std::optional<std::uint64_t> naive_first_avoiding(NumberKind kind, int p, int n, int l, int c);
std::optional<std::uint64_t> naive_first_avoiding_omp(NumberKind kind, int p, int n, int l,
                                                      int c);

// Decodes a coloring index into cells.
std::vector<std::uint8_t> decode_coloring(std::uint64_t index, int p, int c);

// Computes the number by scanning p = 1, 2, ... with the all-colorings
// test. p_cap guards against runaway enumeration (c^p indices must fit the
// scan); exceeding it raises ResourceError.
std::uint64_t naive_number(NumberKind kind, int n, int l, int c, int p_cap = 30,
                           bool parallel = false);

// Integer-level Hind search on the concrete ground set A = {1, 2, 4, ...,
// 2^(m-1)}: colorings of FS(A) = [2^m - 1] as integer tables, block
// witnesses tested through integer sums of the block values. Independent of
// the subset-level route; used as the mandatory cross-check.
bool integer_level_hind_has_avoiding(int m, int n, int c, std::uint64_t max_nodes,
                                     std::optional<TableColoring>* example = nullptr);

// Translates subset-level evidence to the integer level: the coloring of
// [2^m - 1] induced by cell values, checked for avoidance there.
bool integer_level_avoids(const SetColoring& sc, int n);

}  // namespace apsum
