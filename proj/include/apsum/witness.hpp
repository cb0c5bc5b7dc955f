#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apsum/coloring.hpp"
#include "apsum/progression.hpp"
#include "apsum/sets.hpp"

namespace apsum {

// A monochromatic l-term arithmetic progression inside the colored domain.
struct ApWitness {
  Progression progression;
  Color gamma;
};

// As ApWitness, but the common difference carries the color as well.
struct BrauerWitness {
  Progression progression;
  Color gamma;
};

// Progressions Q_1 < ... < Q_n (termwise) whose sums over every nonempty
// index set are termwise monochromatic of color gamma, with the full sum
// staying inside the domain. With brauer set, the common difference of every
// such sum carries gamma too.
struct FsSystemWitness {
  std::vector<Progression> progressions;
  Color gamma = 0;
  bool brauer = false;
};

// Ordered blocks B_1 < ... < B_n inside [m] all of whose nonempty unions
// receive the same color.
struct BlockWitness {
  std::vector<IndexSet> blocks;
  Color gamma;
};

// Ordered blocks over value indices together with the derived block sums
// b_j; all finite sums of the b_j share color gamma.
struct HindmanWitness {
  std::vector<IndexSet> blocks;
  std::vector<Bigint> sums;
  Color gamma;
};

// Uniform view of "a coloring with a domain bound" so the verifiers accept
// both finite tables and rule oracles restricted to [bound].
class ColorView {
 public:
  explicit ColorView(const TableColoring& table);
  ColorView(const OracleColoring& oracle, Bigint bound);

  const Bigint& bound() const { return bound_; }
  bool in_domain(const Bigint& x) const { return x >= 1 && x <= bound_; }
  Color color(const Bigint& x) const { return fn_(x); }

 private:
  Bigint bound_;
  std::function<Color(const Bigint&)> fn_;
};

// Exhaustive over (a, d) with a + (l-1)d <= p, in lexicographic (a, d)
// order; empty result means no such progression exists.
std::optional<ApWitness> find_mono_ap(const TableColoring& coloring, int l);

// As find_mono_ap with the extra requirement color(d) = gamma.
std::optional<BrauerWitness> find_brauer(const TableColoring& coloring, int l);

// Exhaustive backtracking over n-tuples of l-term progressions ordered by
// termwise precedence. Returns the first witness in lexicographic order on
// (gamma, Q_1, ..., Q_n), progressions ordered by (first, diff).
std::optional<FsSystemWitness> find_fs_system(const TableColoring& coloring, int n, int l,
                                              bool brauer);

// Restricted variant for the incremental number search: only witnesses whose
// full sum of last terms equals total_last and whose color is gamma. A fresh
// witness appearing when the domain grows to p must end exactly at p, with
// gamma the color of p, so this restriction loses nothing there.
std::optional<FsSystemWitness> find_fs_system_ending_at(const TableColoring& coloring, int n,
                                                        int l, bool brauer, int total_last,
                                                        Color gamma);

// One violated condition of an FS-system witness.
struct FsViolation {
  enum class Kind { Order, MaxBound, TermDomain, TermColor, DiffDomain, DiffColor };
  Kind kind;
  std::uint64_t c_mask = 0;  // which index set, as a bitmask over [n]
  int s = 0;                 // which term, 1-based; 0 when not applicable
  Bigint value;              // the offending integer
  std::string describe() const;
};

struct FsVerifyReport {
  bool valid = true;
  std::vector<FsViolation> violations;
};

// Re-checks every condition of a witness: the precedence chain, the
// max bound, and all 2^n - 1 index sets x l terms (plus differences when
// brauer). The report lists every violated condition.
FsVerifyReport verify_fs_system(const ColorView& view, const FsSystemWitness& witness);

// Definitional re-checks used for witness soundness (no search shortcuts).
bool check_ap_witness(const TableColoring& coloring, const ApWitness& w);
bool check_brauer_witness(const TableColoring& coloring, const BrauerWitness& w);

// Exhaustive over tuples of blocks with B_1 < ... < B_n in ascending mask
// order; all 2^n - 1 unions must share a color.
std::optional<BlockWitness> find_union_blocks(const SetColoring& sc, int n);
bool check_block_witness(const SetColoring& sc, const BlockWitness& w);

struct HindmanConfig {
  int max_ground = 16;  // largest number of values searched over
};

// Finite Hindman block extraction: blocks B_1 < ... < B_r over indices of
// `values`, block sums b_j, such that all finite sums of {b_1..b_r} share a
// color under the oracle. Values must be strictly increasing. Exhaustion of
// the (finite) block space yields an empty result; a ground set larger than
// the config cap is a resource error.
std::optional<HindmanWitness> find_hindman_blocks(std::span<const Bigint> values,
                                                  const OracleColoring& oracle, int r,
                                                  const HindmanConfig& config = {});
bool check_hindman_witness(std::span<const Bigint> values, const OracleColoring& oracle,
                           const HindmanWitness& w);

}  // namespace apsum
