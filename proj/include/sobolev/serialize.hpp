#pragma once

// JSON encodings of parameter packs, verdicts, ratio reports and refutation
// evidence.  Rational scalars travel as canonical "n" / "n/d" strings so the
// exact values survive the round trip; verdict records parse back losslessly.

#include <json.hpp>

#include "sobolev/decision.hpp"
#include "sobolev/verify.hpp"

namespace sobolev {

nlohmann::json params_to_json(const EmbeddingParams& params);
EmbeddingParams params_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const EmbeddingParams& params, const Verdict& verdict);
// Reconstructs both the parameter pack and the verdict; derived quantities are
// recomputed exactly from the params, so to_json(from_json(x)) == x.
std::pair<EmbeddingParams, Verdict> verdict_from_json(const nlohmann::json& j);

nlohmann::json ratio_report_to_json(const RatioReport& report);
nlohmann::json evidence_to_json(const RefutationEvidence& evidence);

}  // namespace sobolev
