#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apsum/coloring.hpp"
#include "apsum/progression.hpp"
#include "apsum/witness.hpp"

namespace apsum {

// The two merge inductions differ in their seeds and in one extra invariant:
// the Brauer variant's seeds satisfy add(sum over C) = (sum over C)[1] at
// every stage, which is what lets the extraction color the differences too.
enum class MergeVariant { Vdw, Brauer };

std::string variant_name(MergeVariant v);
MergeVariant variant_from_name(std::string_view name);

// State of the merge induction: stage k holds equal-length progressions
// P_1, ..., P_M together with the colors alpha_1..alpha_k recorded so far.
struct StageFamily {
  MergeVariant variant = MergeVariant::Vdw;
  int stage = 0;          // k
  int stage_length = 0;   // term count of every member
  std::vector<Progression> members;
  std::vector<Color> alphas;  // size == stage
};

// One violated stage condition, for reporting.
struct StageViolation {
  std::string what;
};

struct StageCheckReport {
  bool ok = true;
  std::vector<StageViolation> violations;
};

// Greedy minimal seeds: a_1 = 1 and each next a exceeds the growth bound by
// exactly 1. Vdw seeds are (a_i, 1, n); Brauer seeds are (a_i, a_i, n). The
// strengthened ordering (sums over C_1 termwise below sums over C_2 whenever
// C_1 < C_2) is checked exhaustively before returning.
StageFamily seed_family(MergeVariant variant, int stage_length, int family_size);

// Checks conditions (a) and (b) on the finite fragment: for every nonempty
// C over the members, the oracle color of (sum over C)[s] equals alpha_s for
// s <= stage, and sums respect the block order termwise. Brauer families
// additionally satisfy add(sum over C) = (sum over C)[1] for every C.
StageCheckReport verify_stage_conditions(const StageFamily& fam, const OracleColoring& oracle);

struct MergeOutcome {
  std::optional<StageFamily> family;       // set on success
  std::optional<HindmanWitness> blocks;    // the blocks that were merged
  std::string truncation;                  // nonempty when the block search exhausted its caps
  StageCheckReport checks;                 // post-merge (a), (b) and variant invariants
  bool sum_identity_ok = true;             // sum over C of merged == sum over union of blocks
};

// One induction step: take the next-coordinate values P_i[k+1], extract
// target_size ordered blocks with monochromatic finite sums under the
// oracle, and fold the family along those blocks. The merged family is
// re-verified exhaustively on its fragment. A block search that exhausts
// its caps is reported as a truncation, not an error.
MergeOutcome merge_step(const StageFamily& fam, const OracleColoring& oracle, int target_size,
                        const HindmanConfig& config = {});

// Subsamples every member at positions a, a+d, ..., a+(l-1)d. Requires
// a + (l-1)d <= stage and alpha_{a+(s-1)d} = gamma for all s; the Brauer
// variant additionally requires alpha_d = gamma. Each extracted progression
// has difference d * add(member).
std::vector<Progression> extract_at_positions(const StageFamily& fam, int a, int d, Color gamma,
                                              int l);

// ---- the explicit power-separated construction ---------------------------

// The family P_i = (2^i, 2^(h_i), q) with h_i = (m+i) + (i-1)q, whose terms
// have binary supports inside the pairwise disjoint windows
// A_i = {i} u {h_i, ..., h_i + q - 1}.
struct PowerFamily {
  int m = 0;
  int q = 0;
  std::vector<int> h;                 // h_1..h_m
  std::vector<Progression> members;   // P_1..P_m, length q each
  std::vector<IndexSet> windows;      // A_1..A_m (elements are bit positions, 0-based stored +1)
};

PowerFamily build_power_family(int m, int q);

struct PowerDisjointReport {
  bool containment_ok = true;   // pow_set(P_i[s]) inside window i, all i, s
  bool chain_ok = true;         // {1..m} < A_1-{1} < ... < A_m-{m}
  bool direct_ok = true;        // pairwise power-disjointness per term index
  bool routes_agree = true;     // the window route and the direct route agree
  std::vector<std::string> notes;
  bool all_ok() const { return containment_ok && chain_ok && direct_ok && routes_agree; }
};

// Verifies the support claim three independent ways: window containment,
// the window ordering chain, and direct pairwise bit-disjointness of the
// s-th terms, reporting any disagreement between the routes.
PowerDisjointReport verify_power_disjointness(const PowerFamily& fam);

struct MaxBoundReport {
  Bigint max_exact;              // sum of last terms
  std::vector<Bigint> bounds;    // the chain of coarser bounds, in order
  std::vector<bool> steps;       // steps[0]: max <= bounds[0]; steps[i]: bounds[i-1] <= bounds[i]
  bool final_ok = false;         // max <= 2^(q^3), checked directly
  bool chain_ok = false;         // every step holds
};

// Exact evaluation of the bound chain ending in 2^(q^3). Requires m <= q.
// The last chain step needs q >= 3 (at q = 2 the coarse bound 2^(q+1+2q^2)
// overshoots 2^(q^3) even though the exact max does not); the report states
// each step separately so callers see exactly which hold.
MaxBoundReport verify_max_bound(int m, int q);

// The coloring of position indices [q] induced by a base coloring of the
// values: u and v are identified when the base colors of (sum over B)[u]
// and (sum over B)[v] agree for every nonempty B over [m]. Class ids are
// assigned by first occurrence.
struct InducedColoring {
  int q = 0;
  int class_count = 0;
  std::vector<int> class_of;               // per u, 1-based class id
  std::vector<std::vector<Color>> vectors; // per u, base colors over B masks 1..2^m-1
};

InducedColoring induce_position_coloring(const PowerFamily& fam, const OracleColoring& base,
                                         std::size_t max_cells = 31);

// The block color function derived from a position AP (a, d): pi(B) is the
// base color of (sum over B)[a], constant across the sampled positions.
// Well-definedness is checked, not assumed; a violation would mean the
// induced-coloring stage is broken.
struct BlockColorFn {
  SetColoring pi;
  bool well_defined = true;
};

enum class PipelineStage {
  BuildFamily,
  PowerDisjoint,
  MaxBound,
  InducedColoring,
  PositionAp,
  BlockColor,
  UnionBlocks,
  Assemble,
  FinalVerify,
  Done,
};

std::string stage_name(PipelineStage s);

// Full run of the explicit construction at given (m, q): build the family,
// verify its support and bound claims, induce the position coloring, find a
// monochromatic position AP, derive the block colors, extract ordered
// union-monochromatic blocks, assemble the final progressions, and re-derive
// the monochromaticity claim for every index set and term. Failure at a
// stage is a meaningful result (it shows why the true parameters must be
// large), reported with the stage name.
struct PipelineResult {
  int l = 0, n = 0, c = 0, m = 0, q = 0;
  OracleColoring base = OracleColoring::constant(1);
  bool success = false;
  PipelineStage failed_at = PipelineStage::Done;
  std::string failure_detail;

  std::optional<PowerFamily> family;
  std::optional<PowerDisjointReport> power_report;
  std::optional<MaxBoundReport> bound_report;
  std::optional<InducedColoring> induced;
  int ap_a = 0, ap_d = 0;                  // position AP, when found
  std::optional<BlockColorFn> block_color;
  std::optional<BlockWitness> union_blocks;
  std::optional<FsSystemWitness> witness;  // assembled Q_1..Q_n
  std::optional<FsVerifyReport> final_report;
};

PipelineResult run_power_pipeline(int l, int n, int c, const OracleColoring& base, int m, int q);

}  // namespace apsum
