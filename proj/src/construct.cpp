#include "apsum/construct.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "apsum/errors.hpp"

namespace apsum {

std::string variant_name(MergeVariant v) {
  return v == MergeVariant::Vdw ? "vdw" : "brauer";
}

MergeVariant variant_from_name(std::string_view name) {
  if (name == "vdw") return MergeVariant::Vdw;
  if (name == "brauer") return MergeVariant::Brauer;
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

// ---- seeds -----------------------------------------------------------------

StageFamily seed_family(MergeVariant variant, int stage_length, int family_size) {
  if (stage_length < 2) throw std::invalid_argument("seed_family: stage length must be >= 2");
  if (family_size < 1) throw std::invalid_argument("seed_family: family size must be >= 1");
  if (family_size > 20) throw ResourceError("seed_family: family size too large to verify");

  // Greedy minimal seeds: start at 1 and exceed the growth bound by exactly 1.
  std::vector<Bigint> a;
  Bigint running = 0;
  for (int i = 0; i < family_size; ++i) {
    Bigint next;
    if (i == 0) {
      next = 1;
    } else if (variant == MergeVariant::Vdw) {
      next = running + Bigint(i) * stage_length + 1;  // > a_1+...+a_i + i*n
    } else {
      next = Bigint(stage_length) * running + 1;      // > n*(a_1+...+a_i)
    }
    a.push_back(next);
    running += next;
  }

  StageFamily fam;
  fam.variant = variant;
  fam.stage = 0;
  fam.stage_length = stage_length;
  for (const Bigint& ai : a) {
    fam.members.emplace_back(ai, variant == MergeVariant::Vdw ? Bigint(1) : ai, stage_length);
  }

  // The growth rate must buy the strengthened ordering: sums over C_1 sit
  // termwise below sums over C_2 whenever C_1 < C_2. Checked exhaustively.
  const std::uint32_t all = (std::uint32_t{1} << family_size) - 1;
  for (std::uint32_t c1 = 1; c1 <= all; ++c1) {
    for (std::uint32_t c2 = 1; c2 <= all; ++c2) {
      const IndexSet s1 = IndexSet::from_mask(c1);
      const IndexSet s2 = IndexSet::from_mask(c2);
      if (!s1.before(s2)) continue;
      if (!precedes(sum_over(fam.members, s1), sum_over(fam.members, s2)))
        throw std::logic_error("seed_family: greedy seeds violate the sum ordering");
    }
  }
  return fam;
}

// ---- stage conditions --------------------------------------------------------

StageCheckReport verify_stage_conditions(const StageFamily& fam, const OracleColoring& oracle) {
  StageCheckReport report;
  auto flag = [&report](std::string what) {
    report.ok = false;
    report.violations.push_back({std::move(what)});
  };
  const int size = static_cast<int>(fam.members.size());
  if (size == 0) {
    flag("family is empty");
    return report;
  }
  if (static_cast<int>(fam.alphas.size()) != fam.stage) flag("alpha count differs from stage");
  for (const Progression& p : fam.members)
    if (p.length() != fam.stage_length) flag("member length differs from stage length");
  if (!report.ok) return report;

  const std::uint32_t all = (std::uint32_t{1} << size) - 1;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    const Progression sum = sum_over(fam.members, IndexSet::from_mask(mask));
    // (a): recorded colors hold across the whole fragment
    for (int s = 1; s <= fam.stage; ++s) {
      const Color expect = fam.alphas[static_cast<std::size_t>(s) - 1];
      if (oracle.color(sum.term(s)) != expect)
        flag("condition (a) fails at C=" + std::to_string(mask) + " s=" + std::to_string(s));
    }
    // Brauer invariant: the difference of every sum is its own first term
    if (fam.variant == MergeVariant::Brauer && sum.diff() != sum.first())
      flag("difference identity fails at C=" + std::to_string(mask));
  }
  // (b): the ordering carries over to sums
  for (std::uint32_t c1 = 1; c1 <= all; ++c1) {
    for (std::uint32_t c2 = 1; c2 <= all; ++c2) {
      const IndexSet s1 = IndexSet::from_mask(c1);
      const IndexSet s2 = IndexSet::from_mask(c2);
      if (!s1.before(s2)) continue;
      if (!precedes(sum_over(fam.members, s1), sum_over(fam.members, s2)))
        flag("condition (b) fails at C1=" + std::to_string(c1) + " C2=" + std::to_string(c2));
    }
  }
  return report;
}

// ---- merge step ----------------------------------------------------------------

MergeOutcome merge_step(const StageFamily& fam, const OracleColoring& oracle, int target_size,
                        const HindmanConfig& config) {
  if (target_size < 1) throw std::invalid_argument("merge_step: target size must be >= 1");
  if (fam.stage >= fam.stage_length)
    throw std::invalid_argument("merge_step: family is already at its final stage");
  if (fam.members.empty()) throw std::invalid_argument("merge_step: empty family");

  MergeOutcome outcome;
  const int next = fam.stage + 1;

  std::vector<Bigint> values;
  values.reserve(fam.members.size());
  for (const Progression& p : fam.members) values.push_back(p.term(next));

  auto blocks = find_hindman_blocks(values, oracle, target_size, config);
  if (!blocks) {
    outcome.truncation = "block search exhausted over " + std::to_string(values.size()) +
                         " values without " + std::to_string(target_size) +
                         " monochromatic blocks";
    return outcome;
  }
  outcome.blocks = blocks;

  StageFamily merged;
  merged.variant = fam.variant;
  merged.stage = next;
  merged.stage_length = fam.stage_length;
  merged.alphas = fam.alphas;
  merged.alphas.push_back(blocks->gamma);
  for (const IndexSet& b : blocks->blocks) merged.members.push_back(sum_over(fam.members, b));

  // The fold must agree with summing the parent family over unions of blocks.
  const std::uint32_t all = (std::uint32_t{1} << merged.members.size()) - 1;
  for (std::uint32_t mask = 1; mask <= all && outcome.sum_identity_ok; ++mask) {
    std::optional<IndexSet> d;
    for (std::size_t i = 0; i < blocks->blocks.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      d = d ? IndexSet::union_of(*d, blocks->blocks[i]) : blocks->blocks[i];
    }
    outcome.sum_identity_ok =
        sum_over(merged.members, IndexSet::from_mask(mask)) == sum_over(fam.members, *d);
  }

  outcome.checks = verify_stage_conditions(merged, oracle);
  outcome.family = std::move(merged);
  return outcome;
}

// ---- extraction -----------------------------------------------------------------

std::vector<Progression> extract_at_positions(const StageFamily& fam, int a, int d, Color gamma,
                                              int l) {
  if (l < 3) throw std::invalid_argument("extract_at_positions: length must be >= 3");
  if (a < 1 || d < 1) throw std::invalid_argument("extract_at_positions: need a, d >= 1");
  if (a + (l - 1) * d > fam.stage)
    throw std::invalid_argument("extract_at_positions: positions run past stage " +
                                std::to_string(fam.stage));
  for (int s = 1; s <= l; ++s) {
    const int pos = a + (s - 1) * d;
    if (fam.alphas[static_cast<std::size_t>(pos) - 1] != gamma)
      throw std::invalid_argument("extract_at_positions: alpha_" + std::to_string(pos) +
                                  " is not the requested color");
  }
  if (fam.variant == MergeVariant::Brauer) {
    if (d > fam.stage || fam.alphas[static_cast<std::size_t>(d) - 1] != gamma)
      throw std::invalid_argument("extract_at_positions: alpha_" + std::to_string(d) +
                                  " (the difference position) is not the requested color");
  }
  std::vector<Progression> out;
  out.reserve(fam.members.size());
  for (const Progression& p : fam.members)
    out.emplace_back(p.term(a), Bigint(d) * p.diff(), l);
  return out;
}

// ---- power-separated family -------------------------------------------------------

PowerFamily build_power_family(int m, int q) {
  if (m < 1) throw std::invalid_argument("build_power_family: m must be >= 1");
  if (q < 2) throw std::invalid_argument("build_power_family: q must be >= 2");
  if (m > 60) throw ResourceError("build_power_family: m too large");

  PowerFamily fam;
  fam.m = m;
  fam.q = q;
  for (int i = 1; i <= m; ++i) {
    const int h = (m + i) + (i - 1) * q;
    fam.h.push_back(h);
    fam.members.emplace_back(pow2(static_cast<unsigned>(i)), pow2(static_cast<unsigned>(h)), q);
    std::vector<int> window{i};
    for (int t = 0; t < q; ++t) window.push_back(h + t);
    fam.windows.emplace_back(std::move(window));
  }
  return fam;
}

PowerDisjointReport verify_power_disjointness(const PowerFamily& fam) {
  PowerDisjointReport report;

  // (i) every term's binary support sits inside its member's window
  for (int i = 1; i <= fam.m; ++i) {
    const Progression& p = fam.members[static_cast<std::size_t>(i) - 1];
    const IndexSet& window = fam.windows[static_cast<std::size_t>(i) - 1];
    for (int s = 1; s <= fam.q; ++s) {
      for (unsigned bit : pow_set(p.term(s))) {
        if (!window.contains(static_cast<int>(bit))) {
          report.containment_ok = false;
          report.notes.push_back("support of member " + std::to_string(i) + " term " +
                                 std::to_string(s) + " leaves its window");
        }
      }
    }
  }

  // (ii) the windows, less their low anchors, form an increasing chain above [m]
  for (int i = 1; i <= fam.m; ++i) {
    const int lo = fam.h[static_cast<std::size_t>(i) - 1];
    const int hi = lo + fam.q - 1;
    const int prev_hi = i == 1 ? fam.m : fam.h[static_cast<std::size_t>(i) - 2] + fam.q - 1;
    if (lo <= prev_hi) {
      report.chain_ok = false;
      report.notes.push_back("window " + std::to_string(i) + " does not clear its predecessor");
    }
    (void)hi;
  }

  // (iii) direct bitwise check, term index by term index
  for (int s = 1; s <= fam.q; ++s) {
    for (int i = 1; i <= fam.m; ++i) {
      for (int j = i + 1; j <= fam.m; ++j) {
        if (!power_disjoint(fam.members[static_cast<std::size_t>(i) - 1].term(s),
                            fam.members[static_cast<std::size_t>(j) - 1].term(s))) {
          report.direct_ok = false;
          report.notes.push_back("terms " + std::to_string(i) + "," + std::to_string(j) +
                                 " share a bit at s=" + std::to_string(s));
        }
      }
    }
  }

  // The window route proving disjointness while the direct check refutes it
  // would be an internal inconsistency.
  const bool claim_route = report.containment_ok && report.chain_ok;
  if (claim_route && !report.direct_ok) {
    report.routes_agree = false;
    report.notes.push_back("window route and direct route disagree");
  }
  return report;
}

MaxBoundReport verify_max_bound(int m, int q) {
  if (m < 1 || q < 2) throw std::invalid_argument("verify_max_bound: need m >= 1, q >= 2");
  if (m > q) throw std::invalid_argument("verify_max_bound: the bound chain needs m <= q");

  const PowerFamily fam = build_power_family(m, q);
  MaxBoundReport report;
  report.max_exact = 0;
  for (const Progression& p : fam.members) report.max_exact += p.last();

  const unsigned uq = static_cast<unsigned>(q);
  const int h_m = 2 * m + (m - 1) * q;
  const Bigint q2 = Bigint(q) * q;
  report.bounds = {
      Bigint(m) * pow2(static_cast<unsigned>(m)) +
          Bigint(m) * (q - 1) * pow2(static_cast<unsigned>(h_m)),
      Bigint(q) * pow2(uq) + q2 * pow2(static_cast<unsigned>(2 * m + (m - 1) * q)),
      pow2(2 * uq) + q2 * pow2(static_cast<unsigned>(2 * q + q * q)),
      pow2(2 * uq) + pow2(uq) * pow2(static_cast<unsigned>(2 * q * q)),
      pow2(uq + 1) * pow2(static_cast<unsigned>(2 * q * q)),
      pow2(static_cast<unsigned>(q) * static_cast<unsigned>(q) * static_cast<unsigned>(q)),
  };
  report.steps.resize(report.bounds.size());
  report.steps[0] = report.max_exact <= report.bounds[0];
  for (std::size_t i = 1; i < report.bounds.size(); ++i)
    report.steps[i] = report.bounds[i - 1] <= report.bounds[i];
  report.final_ok = report.max_exact <= report.bounds.back();
  report.chain_ok = std::all_of(report.steps.begin(), report.steps.end(), [](bool b) { return b; });
  return report;
}

// ---- induced position coloring ------------------------------------------------------

InducedColoring induce_position_coloring(const PowerFamily& fam, const OracleColoring& base,
                                         std::size_t max_cells) {
  const std::size_t cells = (std::size_t{1} << fam.m) - 1;
  if (cells > max_cells)
    throw ResourceError("induce_position_coloring: 2^m-1 = " + std::to_string(cells) +
                        " exceeds cap " + std::to_string(max_cells));
  InducedColoring induced;
  induced.q = fam.q;
  induced.vectors.reserve(static_cast<std::size_t>(fam.q));
  std::map<std::vector<Color>, int> classes;
  for (int u = 1; u <= fam.q; ++u) {
    std::vector<Color> vec;
    vec.reserve(cells);
    for (std::uint32_t mask = 1; mask <= cells; ++mask)
      vec.push_back(base.color(sum_over(fam.members, IndexSet::from_mask(mask)).term(u)));
    auto [it, fresh] = classes.try_emplace(vec, 0);
    if (fresh) it->second = ++induced.class_count;
    induced.class_of.push_back(it->second);
    induced.vectors.push_back(std::move(vec));
  }
  return induced;
}

// ---- the full pipeline -----------------------------------------------------------------

std::string stage_name(PipelineStage s) {
  switch (s) {
    case PipelineStage::BuildFamily: return "build-family";
    case PipelineStage::PowerDisjoint: return "power-disjoint";
    case PipelineStage::MaxBound: return "max-bound";
    case PipelineStage::InducedColoring: return "induced-coloring";
    case PipelineStage::PositionAp: return "position-ap";
    case PipelineStage::BlockColor: return "block-color";
    case PipelineStage::UnionBlocks: return "union-blocks";
    case PipelineStage::Assemble: return "assemble";
    case PipelineStage::FinalVerify: return "final-verify";
    case PipelineStage::Done: return "done";
  }
  return "?";
}

PipelineResult run_power_pipeline(int l, int n, int c, const OracleColoring& base, int m,
                                  int q) {
  if (l < 3) throw std::invalid_argument("pipeline: length must be >= 3");
  if (n < 1) throw std::invalid_argument("pipeline: need n >= 1");
  if (c < base.color_count())
    throw std::invalid_argument("pipeline: declared color count below the oracle's");
  if (q > 255) throw ResourceError("pipeline: q too large for the position coloring");

  PipelineResult result;
  result.l = l;
  result.n = n;
  result.c = c;
  result.m = m;
  result.q = q;
  result.base = base;

  auto fail = [&result](PipelineStage stage, std::string detail) -> PipelineResult& {
    result.failed_at = stage;
    result.failure_detail = std::move(detail);
    return result;
  };

  result.family = build_power_family(m, q);
  const PowerFamily& fam = *result.family;

  result.power_report = verify_power_disjointness(fam);
  if (!result.power_report->all_ok())
    return fail(PipelineStage::PowerDisjoint, "support claim failed");

  if (m > q) return fail(PipelineStage::MaxBound, "bound chain needs m <= q");
  result.bound_report = verify_max_bound(m, q);
  if (!result.bound_report->final_ok)
    return fail(PipelineStage::MaxBound, "family maximum exceeds 2^(q^3)");

  result.induced = induce_position_coloring(fam, base);

  // A monochromatic l-term progression of positions in the induced coloring.
  std::vector<std::uint8_t> class_cells;
  for (int id : result.induced->class_of) class_cells.push_back(static_cast<std::uint8_t>(id));
  const TableColoring class_table(std::max(result.induced->class_count, 1),
                                  std::move(class_cells));
  const auto position_ap = find_mono_ap(class_table, l);
  if (!position_ap)
    return fail(PipelineStage::PositionAp,
                "no monochromatic " + std::to_string(l) + "-term progression in the induced "
                "coloring of " + std::to_string(q) + " positions");
  result.ap_a = position_ap->progression.first().convert_to<int>();
  result.ap_d = position_ap->progression.diff().convert_to<int>();
  const int a = result.ap_a;
  const int d = result.ap_d;

  // Block colors: pi(B) = base color of (sum over B)[a], which the induced
  // equalities promise is constant across the sampled positions. Checked.
  const std::size_t cells = (std::size_t{1} << m) - 1;
  std::vector<std::uint8_t> pi_cells(cells);
  bool well_defined = true;
  for (std::uint32_t mask = 1; mask <= cells; ++mask) {
    const Progression sum = sum_over(fam.members, IndexSet::from_mask(mask));
    const Color pi = base.color(sum.term(a));
    for (int k = 1; k < l; ++k)
      if (base.color(sum.term(a + k * d)) != pi) well_defined = false;
    pi_cells[mask - 1] = static_cast<std::uint8_t>(pi);
  }
  result.block_color = BlockColorFn{SetColoring(m, c, std::move(pi_cells)), well_defined};
  if (!well_defined)
    return fail(PipelineStage::BlockColor,
                "block color is not well defined: the induced-coloring stage is inconsistent");

  result.union_blocks = find_union_blocks(result.block_color->pi, n);
  if (!result.union_blocks)
    return fail(PipelineStage::UnionBlocks,
                "no " + std::to_string(n) + " ordered blocks with monochromatic unions over " +
                std::to_string(m) + " generators");

  FsSystemWitness witness;
  witness.gamma = result.union_blocks->gamma;
  witness.brauer = false;
  for (const IndexSet& b : result.union_blocks->blocks) {
    const Progression sum = sum_over(fam.members, b);
    witness.progressions.emplace_back(sum.term(a), Bigint(d) * sum.diff(), l);
  }
  result.witness = witness;

  // Final re-derivation: the witness must satisfy its contract against the
  // base coloring, and every index set's color must trace back to the block
  // color of the union of its blocks.
  const Bigint domain = pow2(static_cast<unsigned>(q) * static_cast<unsigned>(q) *
                             static_cast<unsigned>(q));
  result.final_report = verify_fs_system(ColorView(base, domain), witness);
  bool union_trace_ok = true;
  const std::uint32_t masks = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask <= masks && union_trace_ok; ++mask) {
    std::optional<IndexSet> d_set;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      const IndexSet& b = result.union_blocks->blocks[static_cast<std::size_t>(i)];
      d_set = d_set ? IndexSet::union_of(*d_set, b) : b;
    }
    const Progression via_blocks = sum_over(fam.members, *d_set);
    const Progression via_witness = sum_over(witness.progressions, IndexSet::from_mask(mask));
    if (result.block_color->pi.color_of_mask(static_cast<std::uint32_t>(d_set->mask())) !=
        witness.gamma)
      union_trace_ok = false;
    for (int s = 1; s <= l && union_trace_ok; ++s)
      union_trace_ok = via_witness.term(s) == via_blocks.term(a + (s - 1) * d);
  }
  if (!result.final_report->valid || !union_trace_ok)
    return fail(PipelineStage::FinalVerify, "assembled witness failed re-verification");

  result.success = true;
  result.failed_at = PipelineStage::Done;
  return result;
}

}  // namespace apsum
