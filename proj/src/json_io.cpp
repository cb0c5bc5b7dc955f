#include "apsum/json_io.hpp"

#include <stdexcept>

#include "apsum/version.hpp"

namespace apsum {

namespace {

Json progressions_json(const std::vector<Progression>& ps) {
  Json arr = Json::array();
  for (const Progression& p : ps) arr.push_back(p.str());
  return arr;
}

std::vector<Progression> progressions_from_json(const Json& arr) {
  std::vector<Progression> out;
  for (const auto& item : arr) out.push_back(Progression::parse(item.get<std::string>()));
  return out;
}

}  // namespace

Json to_json(const TableColoring& t) {
  Json j;
  j["colors"] = t.color_count();
  if (t.color_count() <= 35) {
    j["cells"] = t.str();
  } else {
    Json arr = Json::array();
    for (std::uint8_t v : t.cells()) arr.push_back(static_cast<int>(v));
    j["cells"] = arr;
  }
  return j;
}

TableColoring table_coloring_from_json(const Json& j) {
  const int c = j.at("colors").get<int>();
  if (j.at("cells").is_string())
    return TableColoring::parse(j.at("cells").get<std::string>(), c);
  std::vector<std::uint8_t> cells;
  for (const auto& v : j.at("cells")) cells.push_back(static_cast<std::uint8_t>(v.get<int>()));
  return TableColoring(c, std::move(cells));
}

Json to_json(const OracleColoring& o) {
  Json j;
  switch (o.kind()) {
    case OracleColoring::Kind::Modulus:
      j["kind"] = "modulus";
      j["modulus"] = o.modulus_value();
      j["class_colors"] = o.table();
      break;
    case OracleColoring::Kind::Digit:
      j["kind"] = "digit";
      j["base"] = o.base();
      j["position"] = o.position();
      j["digit_colors"] = o.table();
      break;
    case OracleColoring::Kind::Seeded:
      j["kind"] = "seeded";
      j["seed"] = o.seed();
      j["colors"] = o.color_count();
      break;
  }
  return j;
}

OracleColoring oracle_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "modulus") {
    return OracleColoring::modulus(j.at("modulus").get<std::uint64_t>(),
                                   j.at("class_colors").get<std::vector<Color>>());
  }
  if (kind == "digit") {
    return OracleColoring::digit(j.at("base").get<std::uint32_t>(),
                                 j.at("position").get<std::uint32_t>(),
                                 j.at("digit_colors").get<std::vector<Color>>());
  }
  if (kind == "seeded") {
    if (!j.contains("seed"))
      throw std::invalid_argument("seeded oracle requires an explicit seed");
    return OracleColoring::seeded(j.at("seed").get<std::uint64_t>(), j.at("colors").get<int>());
  }
  if (kind == "constant")  // convenience alias for a one-class modulus rule
    return OracleColoring::constant(j.at("color").get<Color>(),
                                    j.value("colors", 0));
  throw std::invalid_argument("unknown oracle kind: " + kind);
}

Json to_json(const SetColoring& sc) {
  Json cells = Json::object();
  for (std::size_t mask = 1; mask <= sc.cell_count(); ++mask)
    cells[std::to_string(mask)] = sc.cells()[mask - 1];
  Json j;
  j["m"] = sc.ground_size();
  j["colors"] = sc.color_count();
  j["cells"] = cells;
  return j;
}

SetColoring set_coloring_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  const int c = j.at("colors").get<int>();
  const std::size_t count = (std::size_t{1} << m) - 1;
  std::vector<std::uint8_t> cells(count, 0);
  for (const auto& [key, value] : j.at("cells").items()) {
    const std::size_t mask = std::stoull(key);
    if (mask < 1 || mask > count) throw std::invalid_argument("set coloring: mask out of range");
    cells[mask - 1] = static_cast<std::uint8_t>(value.get<int>());
  }
  for (std::uint8_t v : cells)
    if (v == 0) throw std::invalid_argument("set coloring: missing cell");
  return SetColoring(m, c, std::move(cells));
}

Json to_json(const ApWitness& w) {
  return Json{{"schema", kSchemaVersion},
              {"kind", "ap"},
              {"progression", w.progression.str()},
              {"gamma", w.gamma}};
}

Json to_json(const BrauerWitness& w) {
  return Json{{"schema", kSchemaVersion},
              {"kind", "brauer"},
              {"progression", w.progression.str()},
              {"gamma", w.gamma}};
}

Json to_json(const FsSystemWitness& w) {
  return Json{{"schema", kSchemaVersion},
              {"kind", "fs_system"},
              {"progressions", progressions_json(w.progressions)},
              {"gamma", w.gamma},
              {"brauer", w.brauer}};
}

Json to_json(const BlockWitness& w) {
  Json blocks = Json::array();
  for (const IndexSet& b : w.blocks) blocks.push_back(b.mask());
  return Json{{"schema", kSchemaVersion}, {"kind", "blocks"}, {"blocks", blocks}, {"gamma", w.gamma}};
}

Json to_json(const HindmanWitness& w) {
  Json blocks = Json::array();
  for (const IndexSet& b : w.blocks) blocks.push_back(b.mask());
  Json sums = Json::array();
  for (const Bigint& s : w.sums) sums.push_back(s.str());
  return Json{{"schema", kSchemaVersion},
              {"kind", "hindman"},
              {"blocks", blocks},
              {"sums", sums},
              {"gamma", w.gamma}};
}

Json to_json(const FsVerifyReport& r) {
  Json violations = Json::array();
  for (const FsViolation& v : r.violations) {
    violations.push_back(Json{{"c_mask", v.c_mask},
                              {"s", v.s},
                              {"value", v.value.str()},
                              {"what", v.describe()}});
  }
  return Json{{"schema", kSchemaVersion}, {"valid", r.valid}, {"violations", violations}};
}

ParsedWitness witness_from_json(const Json& j) {
  ParsedWitness out;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ap") {
    out.ap = ApWitness{Progression::parse(j.at("progression").get<std::string>()),
                       j.at("gamma").get<Color>()};
  } else if (kind == "brauer") {
    out.brauer = BrauerWitness{Progression::parse(j.at("progression").get<std::string>()),
                               j.at("gamma").get<Color>()};
  } else if (kind == "fs_system") {
    out.fs = FsSystemWitness{progressions_from_json(j.at("progressions")),
                             j.at("gamma").get<Color>(), j.value("brauer", false)};
  } else if (kind == "blocks") {
    BlockWitness w;
    w.gamma = j.at("gamma").get<Color>();
    for (const auto& mask : j.at("blocks"))
      w.blocks.push_back(IndexSet::from_mask(mask.get<std::uint64_t>()));
    out.blocks = w;
  } else {
    throw std::invalid_argument("unknown witness kind: " + kind);
  }
  return out;
}

// ---- certificates ---------------------------------------------------------------

namespace {

std::string claim_name(Claim claim) {
  return claim == Claim::Exact ? "exact" : "lower-bound";
}

Claim claim_from_name(const std::string& name) {
  if (name == "exact") return Claim::Exact;
  if (name == "lower-bound") return Claim::LowerBound;
  throw std::invalid_argument("unknown claim: " + name);
}

}  // namespace

Json to_json(const Certificate& cert) {
  Json q;
  q["kind"] = kind_name(cert.query.kind);
  if (cert.query.kind == NumberKind::Hind || cert.query.kind == NumberKind::F)
    q["n"] = cert.query.n;
  if (cert.query.kind != NumberKind::Hind) q["l"] = cert.query.l;
  q["c"] = cert.query.c;

  Json ev = Json::object();
  if (cert.evidence.coloring) ev["coloring"] = to_json(*cert.evidence.coloring);
  if (cert.evidence.set_coloring) ev["set_coloring"] = to_json(*cert.evidence.set_coloring);

  return Json{{"schema", cert.schema},
              {"query", q},
              {"claim", claim_name(cert.claim)},
              {"value", cert.value},
              {"evidence", ev},
              {"stats",
               Json{{"nodes", cert.stats.nodes},
                    {"deepest", cert.stats.deepest},
                    {"exhausted", cert.stats.exhausted}}},
              {"timestamp", cert.timestamp},
              {"engine", cert.engine}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.schema = j.at("schema").get<int>();
  if (cert.schema != kSchemaVersion)
    throw std::invalid_argument("unsupported certificate schema " + std::to_string(cert.schema));
  const Json& q = j.at("query");
  cert.query.kind = kind_from_name(q.at("kind").get<std::string>());
  cert.query.n = q.value("n", 0);
  cert.query.l = q.value("l", 0);
  cert.query.c = q.at("c").get<int>();
  cert.claim = claim_from_name(j.at("claim").get<std::string>());
  cert.value = j.at("value").get<std::uint64_t>();
  const Json& ev = j.at("evidence");
  if (ev.contains("coloring")) cert.evidence.coloring = table_coloring_from_json(ev.at("coloring"));
  if (ev.contains("set_coloring"))
    cert.evidence.set_coloring = set_coloring_from_json(ev.at("set_coloring"));
  const Json& stats = j.at("stats");
  cert.stats.nodes = stats.at("nodes").get<std::uint64_t>();
  cert.stats.deepest = stats.at("deepest").get<int>();
  cert.stats.exhausted = stats.at("exhausted").get<bool>();
  cert.timestamp = j.value("timestamp", "");
  cert.engine = j.value("engine", "");
  return cert;
}

// ---- pipeline transcripts ----------------------------------------------------------

Json to_json(const PipelineResult& result) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "pipeline";
  j["params"] = Json{{"l", result.l}, {"n", result.n}, {"c", result.c},
                     {"m", result.m}, {"q", result.q}};
  j["oracle"] = to_json(result.base);
  j["success"] = result.success;
  j["stage"] = stage_name(result.failed_at);
  if (!result.failure_detail.empty()) j["failure"] = result.failure_detail;

  if (result.family) {
    Json fam;
    fam["h"] = result.family->h;
    fam["members"] = progressions_json(result.family->members);
    j["family"] = fam;
  }
  if (result.power_report) {
    j["power_disjoint"] = Json{{"containment", result.power_report->containment_ok},
                               {"chain", result.power_report->chain_ok},
                               {"direct", result.power_report->direct_ok},
                               {"routes_agree", result.power_report->routes_agree}};
  }
  if (result.bound_report) {
    Json bounds = Json::array();
    for (const Bigint& b : result.bound_report->bounds) bounds.push_back(b.str());
    j["max_bound"] = Json{{"max", result.bound_report->max_exact.str()},
                          {"bounds", bounds},
                          {"steps", result.bound_report->steps},
                          {"final_ok", result.bound_report->final_ok}};
  }
  if (result.induced) {
    j["induced"] = Json{{"classes", result.induced->class_count},
                        {"class_of", result.induced->class_of}};
  }
  if (result.ap_a > 0) j["position_ap"] = Json{{"a", result.ap_a}, {"d", result.ap_d}};
  if (result.block_color) {
    j["block_color"] = Json{{"pi", to_json(result.block_color->pi)},
                            {"well_defined", result.block_color->well_defined}};
  }
  if (result.union_blocks) j["blocks"] = to_json(*result.union_blocks);
  if (result.witness) j["witness"] = to_json(*result.witness);
  if (result.final_report) j["final_report"] = to_json(*result.final_report);
  return j;
}

TranscriptCheck verify_transcript(const Json& transcript) {
  TranscriptCheck check;
  try {
    if (transcript.at("kind").get<std::string>() != "pipeline") {
      check.valid = false;
      check.reason = "not a pipeline transcript";
      return check;
    }
    const Json& params = transcript.at("params");
    const OracleColoring oracle = oracle_from_json(transcript.at("oracle"));
    const PipelineResult rerun =
        run_power_pipeline(params.at("l").get<int>(), params.at("n").get<int>(),
                           params.at("c").get<int>(), oracle, params.at("m").get<int>(),
                           params.at("q").get<int>());
    const Json replay = to_json(rerun);
    for (const char* key :
         {"success", "stage", "family", "induced", "position_ap", "blocks", "witness"}) {
      const bool was = transcript.contains(key);
      const bool is = replay.contains(key);
      if (was != is || (was && transcript.at(key) != replay.at(key))) {
        check.valid = false;
        check.reason = std::string("transcript mismatch at '") + key + "'";
        return check;
      }
    }
  } catch (const std::exception& e) {
    check.valid = false;
    check.reason = std::string("transcript replay failed: ") + e.what();
  }
  return check;
}

}  // namespace apsum
