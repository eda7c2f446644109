#include "sobolev/serialize.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sobolev/derived.hpp"
#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

using nlohmann::json;

json rat_json(const Rat& q) { return rat_to_string(q); }

Rat rat_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw InvalidParams(key, "missing or non-string rational field");
  return rat_from_string(j.at(key).get<std::string>());
}

EmbeddingCase case_from_name(const std::string& s) {
  if (s == "i") return EmbeddingCase::SameSideInterior;
  if (s == "ii") return EmbeddingCase::OppositeInterior;
  if (s == "iii") return EmbeddingCase::GradientEndpoint;
  if (s == "iv") return EmbeddingCase::Critical;
  throw InvalidParams("case", "unknown case label: " + s);
}

FailureTag failure_from_name(const std::string& s) {
  if (s == "a_zero") return FailureTag::AZero;
  if (s == "c_outside_interval") return FailureTag::COutsideInterval;
  if (s == "c_equals_c0") return FailureTag::CEqualsC0;
  if (s == "c_beyond_minus_n") return FailureTag::CBeyondMinusN;
  if (s == "theta_above_critical") return FailureTag::ThetaAboveCritical;
  if (s == "c1_requires_r_at_least_p") return FailureTag::C1RequiresRAtLeastP;
  if (s == "r_range_for_c1") return FailureTag::RRangeForC1;
  throw InvalidParams("failure.tag", "unknown failure tag: " + s);
}

NormInequality inequality_from_name(const std::string& s) {
  if (s == "multiplicative_theta") return NormInequality::MultiplicativeTheta;
  if (s == "gradient_only") return NormInequality::GradientOnly;
  if (s == "multiplicative_critical") return NormInequality::MultiplicativeCritical;
  throw InvalidParams("inequality.kind", "unknown inequality kind: " + s);
}

const char* side_name(SideTag t) {
  switch (t) {
    case SideTag::SameSideStrict: return "same_side_strict";
    case SideTag::SameSideWithBoundary: return "same_side_with_boundary";
    case SideTag::OppositeStrict: return "opposite_strict";
    case SideTag::DegenerateEqual: return "degenerate_equal";
  }
  return "?";
}

json derived_to_json(const DerivedQuantities& dq) {
  json j;
  j["c0"] = rat_json(dq.c0);
  j["c1"] = rat_json(dq.c1);
  if (dq.theta_c) j["theta_c"] = rat_json(*dq.theta_c);
  if (dq.theta_minus_n) j["theta_minus_n"] = rat_json(*dq.theta_minus_n);
  j["p_star"] = ext_to_string(dq.p_star);
  j["side"] = side_name(dq.side.tag);
  j["degenerate_pivots"] = dq.side.degenerate_equal;
  if (dq.star) {
    json s;
    s["a_star"] = rat_json(dq.star->a_star);
    s["b_star"] = rat_json(dq.star->b_star);
    s["c_star1"] = rat_json(dq.star->c_star1);
    j["star"] = s;
  }
  return j;
}

// Doubles in evidence/report payloads: JSON has no +inf, so clamp to the
// largest finite double (only reachable by deliberately extreme parameters).
json num(double v) {
  if (std::isinf(v)) return v > 0 ? std::numeric_limits<double>::max()
                                  : -std::numeric_limits<double>::max();
  return v;
}

json quad_result_to_json(const QuadResult& q) {
  json j;
  switch (q.status) {
    case QuadResult::Status::Converged: j["status"] = "converged"; break;
    case QuadResult::Status::Divergent: j["status"] = "divergent"; break;
    case QuadResult::Status::MaxRefinementReached:
      j["status"] = "max_refinement_reached";
      break;
  }
  if (q.status != QuadResult::Status::Divergent) {
    j["value"] = num(q.value);
    j["abs_error"] = num(q.abs_error);
  }
  if (q.divergence) {
    j["divergence"] = {{"at_zero", q.divergence->at_zero},
                       {"local_exponent", num(q.divergence->local_exponent)}};
  }
  return j;
}

}  // namespace

json params_to_json(const EmbeddingParams& params) {
  json j;
  j["dim"] = params.dim;
  j["a"] = rat_json(params.a);
  j["b"] = rat_json(params.b);
  j["c"] = rat_json(params.c);
  j["p"] = rat_json(params.p);
  j["r"] = rat_json(params.r);
  return j;
}

EmbeddingParams params_from_json(const json& j) {
  if (!j.is_object()) throw InvalidParams("params", "expected an object");
  EmbeddingParams p;
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw InvalidParams("dim", "missing or non-integer dimension");
  p.dim = j.at("dim").get<int>();
  p.a = rat_field(j, "a");
  p.b = rat_field(j, "b");
  p.c = rat_field(j, "c");
  p.p = rat_field(j, "p");
  p.r = rat_field(j, "r");
  validate(p);
  return p;
}

json verdict_to_json(const EmbeddingParams& params, const Verdict& verdict) {
  json j;
  j["params"] = params_to_json(params);
  j["holds"] = verdict.holds;
  if (verdict.case_label) j["case"] = case_name(*verdict.case_label);
  if (verdict.inequality) {
    json ineq;
    ineq["kind"] = inequality_name(verdict.inequality->kind);
    ineq["theta"] = rat_json(verdict.inequality->theta);
    ineq["c_used"] = rat_json(verdict.inequality->c_used);
    j["inequality"] = ineq;
  }
  if (verdict.failure) {
    json f;
    f["tag"] = failure_name(verdict.failure->tag);
    if (verdict.failure->scaling_exponent_k)
      f["scaling_exponent_k"] = rat_json(*verdict.failure->scaling_exponent_k);
    j["failure"] = f;
  }
  j["derived"] = derived_to_json(verdict.derived);
  return j;
}

std::pair<EmbeddingParams, Verdict> verdict_from_json(const json& j) {
  if (!j.is_object() || !j.contains("params"))
    throw InvalidParams("record", "expected an object with a params field");
  EmbeddingParams params = params_from_json(j.at("params"));
  Verdict v;
  if (!j.contains("holds") || !j.at("holds").is_boolean())
    throw InvalidParams("holds", "missing or non-boolean verdict flag");
  v.holds = j.at("holds").get<bool>();
  if (j.contains("case")) v.case_label = case_from_name(j.at("case").get<std::string>());
  if (j.contains("inequality")) {
    const json& ineq = j.at("inequality");
    InequalitySpec spec;
    spec.kind = inequality_from_name(ineq.at("kind").get<std::string>());
    spec.theta = rat_field(ineq, "theta");
    spec.c_used = rat_field(ineq, "c_used");
    v.inequality = spec;
  }
  if (j.contains("failure")) {
    const json& f = j.at("failure");
    FailureReason reason;
    reason.tag = failure_from_name(f.at("tag").get<std::string>());
    if (f.contains("scaling_exponent_k"))
      reason.scaling_exponent_k = rat_field(f, "scaling_exponent_k");
    v.failure = reason;
  }
  v.derived = derive(params);
  return {params, v};
}

json ratio_report_to_json(const RatioReport& report) {
  json j;
  j["theta_used"] = num(report.theta_used);
  json rows = json::array();
  for (const RatioEntry& e : report.ratios)
    rows.push_back({{"profile", e.profile_id}, {"lambda", num(e.lambda)},
                    {"ratio", num(e.ratio)}});
  j["ratios"] = rows;
  j["max_ratio"] = num(report.max_ratio);
  j["scale_invariance_spread"] = num(report.scale_invariance_spread);
  json spreads = json::object();
  for (const auto& [id, spread] : report.per_profile_spread) spreads[id] = num(spread);
  j["per_profile_spread"] = spreads;
  j["excluded"] = report.excluded;
  return j;
}

json evidence_to_json(const RefutationEvidence& evidence) {
  json j;
  j["mechanism"] = mechanism_name(evidence.mechanism);
  j["family"] = evidence.family;
  j["failure_tag"] = failure_name(evidence.tag);
  json seq = json::array();
  for (const auto& [par, val] : evidence.witness_sequence)
    seq.push_back({{"parameter", num(par)}, {"value", num(val)}});
  j["witness_sequence"] = seq;
  j["growth_factor"] = num(evidence.growth_factor);
  if (evidence.witness_norms) {
    json n;
    n["sup"] = quad_result_to_json(evidence.witness_norms->sup_norm);
    n["gradient"] = quad_result_to_json(evidence.witness_norms->grad_norm);
    n["target"] = quad_result_to_json(evidence.witness_norms->target_norm);
    j["witness_norms"] = n;
  }
  if (evidence.scaling_exponent_k) j["scaling_exponent_k"] = num(*evidence.scaling_exponent_k);
  return j;
}

}  // namespace sobolev
