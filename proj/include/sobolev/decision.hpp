#pragma once

// Exact classifier for the embedding question.  The embedding holds iff
// a != 0 and one of four mutually exclusive configurations applies:
//
//   (i)   ap - N and b - p on the same side of -N (boundary allowed),
//         ap - N != b - p, c strictly between c0 and c1, theta_c <= p*/r;
//   (ii)  ap - N and b - p strictly on opposite sides of -N,
//         c strictly between c0 and -N, theta_c <= p*/r;
//   (iii) p <= r <= p*, a*(b - p + N) > 0, c = c1;
//   (iv)  p < N, r > p*, ap - N = b - p, c = c1 (= c0).
//
// A holds-verdict carries the matching norm inequality: the multiplicative
// form with weight theta_c, the gradient-only form (degenerate c0 = c1 with
// p <= r <= p*), or the critical multiplicative form with weight p*/r.
//
// When the embedding fails, necessity_failure reports the first reason from
// a fixed priority list (see FailureTag).  The pair is complete: exactly one
// of "holds" / "some failure tag fires" is true for every valid tuple.

#include <optional>

#include "sobolev/derived.hpp"
#include "sobolev/params.hpp"

namespace sobolev {

enum class EmbeddingCase {
  SameSideInterior,  // serialized "i"
  OppositeInterior,  // serialized "ii"
  GradientEndpoint,  // serialized "iii"
  Critical,          // serialized "iv"
};

enum class NormInequality {
  MultiplicativeTheta,     // target <= C * grad^theta * sup^(1-theta), theta = theta_c
  GradientOnly,            // target <= C * grad
  MultiplicativeCritical,  // same multiplicative shape with theta = p*/r
};

struct InequalitySpec {
  NormInequality kind;
  Rat theta;   // exponent on the gradient factor (1 for the gradient-only form)
  Rat c_used;  // target weight exponent the inequality is stated at
};

// Reasons a tuple fails, in the priority order they are reported:
//   AZero                 a == 0 (constants defeat any candidate inequality)
//   COutsideInterval      c outside the closed interval between c0 and c1
//   CEqualsC0             c == c0 while c0 != c1
//   CBeyondMinusN         one-sided configuration (b-p <= -N with a > 0, or
//                         b-p >= -N with a < 0) and c not strictly between
//                         c0 and -N
//   ThetaAboveCritical    p < N, r > p*, c0 != c1, theta_c > p*/r
//   C1RequiresRAtLeastP   c == c1 with r < p (continuity fails); carries the
//                         scaling exponent k = (b - p + N)/p - a when c0 != c1
//   RRangeForC1           defensive net: c == c1, a*(b-p+N) > 0, c0 != c1 and
//                         r outside [p, p*].  Unreachable under the priority
//                         order above (r < p is claimed by C1RequiresRAtLeastP
//                         and r > p* by ThetaAboveCritical); kept so the
//                         enumeration is structurally complete.
enum class FailureTag {
  AZero,
  COutsideInterval,
  CEqualsC0,
  CBeyondMinusN,
  ThetaAboveCritical,
  C1RequiresRAtLeastP,
  RRangeForC1,
};

struct FailureReason {
  FailureTag tag;
  // Exponent driving the scale sequence that defeats the sup term; present
  // only for C1RequiresRAtLeastP with c0 != c1 (it is nonzero there).
  std::optional<Rat> scaling_exponent_k;
};

struct Verdict {
  bool holds = false;
  std::optional<EmbeddingCase> case_label;    // present iff holds
  std::optional<InequalitySpec> inequality;   // present iff holds
  std::optional<FailureReason> failure;       // present iff !holds
  DerivedQuantities derived;
};

Verdict decide_embedding(const EmbeddingParams& params);

// The necessity side alone: the first firing failure reason, or nullopt when
// none fires (equivalently, when the embedding holds).
std::optional<FailureReason> necessity_failure(const EmbeddingParams& params);

// The four sufficiency predicates, exposed individually so tests can assert
// mutual exclusivity.  Each takes the derived quantities for `params`.
bool case_same_side_interior(const EmbeddingParams& params, const DerivedQuantities& dq);
bool case_opposite_interior(const EmbeddingParams& params, const DerivedQuantities& dq);
bool case_gradient_endpoint(const EmbeddingParams& params, const DerivedQuantities& dq);
bool case_critical(const EmbeddingParams& params, const DerivedQuantities& dq);

// Independent closed-form classifier for the slice c = 0 (unweighted target
// space), transcribed literally from its published characterization; valid
// for r >= 1.  Throws PreconditionViolated unless params.c == 0.
bool decide_c_zero(const EmbeddingParams& params);

// Same for the slice b = c = 0 (plain gradient weight and unweighted target).
// Throws PreconditionViolated unless params.b == 0 and params.c == 0.
bool decide_b_c_zero(const EmbeddingParams& params);

const char* case_name(EmbeddingCase c);            // "i" | "ii" | "iii" | "iv"
const char* failure_name(FailureTag t);            // snake_case tag name
const char* inequality_name(NormInequality kind);  // snake_case kind name

}  // namespace sobolev
