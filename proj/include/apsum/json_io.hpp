#pragma once

#include <nlohmann/json.hpp>

#include "apsum/construct.hpp"
#include "apsum/numbers.hpp"
#include "apsum/witness.hpp"

// JSON forms of everything the CLI prints or re-reads. All top-level
// objects carry "schema": 1. Progressions serialize as "first:diff:length";
// big values as decimal strings; set colorings as {mask -> color} maps with
// decimal-string keys.

namespace apsum {

using Json = nlohmann::json;

Json to_json(const TableColoring& t);
TableColoring table_coloring_from_json(const Json& j);

Json to_json(const OracleColoring& o);
OracleColoring oracle_from_json(const Json& j);

Json to_json(const SetColoring& sc);
SetColoring set_coloring_from_json(const Json& j);

Json to_json(const ApWitness& w);
Json to_json(const BrauerWitness& w);
Json to_json(const FsSystemWitness& w);
Json to_json(const BlockWitness& w);
Json to_json(const HindmanWitness& w);
Json to_json(const FsVerifyReport& r);

// Generic witness parse, dispatched on "kind".
struct ParsedWitness {
  std::optional<ApWitness> ap;
  std::optional<BrauerWitness> brauer;
  std::optional<FsSystemWitness> fs;
  std::optional<BlockWitness> blocks;
};
ParsedWitness witness_from_json(const Json& j);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const PipelineResult& result);

// Replays a pipeline transcript: re-runs the construction from the recorded
// parameters and checks that every recorded stage matches.
struct TranscriptCheck {
  bool valid = true;
  std::string reason;
};
TranscriptCheck verify_transcript(const Json& transcript);

}  // namespace apsum
