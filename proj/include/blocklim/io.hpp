#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "blocklim/design.hpp"

namespace blocklim
{
using Json = nlohmann::json;  // std::map-backed: keys come out sorted

/// Canonical model document. Optional per-item values (density, mu, yield_force, ...) appear only when set.
Json model_to_json(StructuralModel const & model);

/// Throws Error(ParseError) naming the offending key path, e.g. "interfaces[3].p1".
StructuralModel model_from_json(Json const & doc);

/// Two-space indented canonical text with a trailing newline.
std::string dump_model(StructuralModel const & model);
StructuralModel parse_model(std::string const & text);

StructuralModel load_model(std::filesystem::path const & path);
void save_model(std::filesystem::path const & path, StructuralModel const & model);

/// Result documents. The system supplies block and interface ids for the flat vectors.
Json to_json(LimitResult const & result, SystemMatrices const & system);
Json to_json(Mechanism const & mechanism, SystemMatrices const & system);
Json to_json(SettlementResult const & result, SystemMatrices const & system);
Json to_json(SettlementCheck const & check);
Json to_json(DesignResult const & result);

Json error_json(ErrorCode code, std::string const & message);

/// "block=ID,ux=..,uy=..,phi=.." with optional name=, lambda_a=. Unlisted components are zero.
SettlementScenario parse_settlement(std::string const & text);

}  // namespace blocklim
