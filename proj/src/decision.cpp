#include "sobolev/decision.hpp"

#include <cassert>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

bool strictly_between(const Rat& x, const Rat& lo, const Rat& hi) {
  return (lo < x && x < hi) || (hi < x && x < lo);
}

bool in_closed_interval(const Rat& x, const Rat& lo, const Rat& hi) {
  return (lo <= x && x <= hi) || (hi <= x && x <= lo);
}

// theta_c <= p*/r, decided exactly; vacuously true when p* = +infinity.
bool theta_within_critical(const Rat& theta, const ExtRat& p_star, const Rat& r) {
  if (p_star.infinite) return true;
  return theta * r <= p_star.value;
}

Rat side_product(const EmbeddingParams& P) {
  return P.a * (P.b - P.p + Rat(P.dim));
}

}  // namespace

bool case_same_side_interior(const EmbeddingParams& P, const DerivedQuantities& dq) {
  if (P.a == 0) return false;
  if (dq.side.degenerate_equal) return false;        // needs ap - N != b - p
  if (side_product(P) < 0) return false;             // same side, boundary allowed
  if (!strictly_between(P.c, dq.c0, dq.c1)) return false;
  return theta_within_critical(*dq.theta_c, dq.p_star, P.r);
}

bool case_opposite_interior(const EmbeddingParams& P, const DerivedQuantities& dq) {
  if (P.a == 0) return false;
  if (side_product(P) >= 0) return false;            // strictly opposite sides
  if (!strictly_between(P.c, dq.c0, Rat(-P.dim))) return false;
  // -N lies strictly between c0 and c1 here, so c is interior and theta_c set.
  return theta_within_critical(*dq.theta_c, dq.p_star, P.r);
}

bool case_gradient_endpoint(const EmbeddingParams& P, const DerivedQuantities& dq) {
  if (P.a == 0) return false;
  if (P.r < P.p || !ext_le(P.r, dq.p_star)) return false;  // p <= r <= p*
  if (side_product(P) <= 0) return false;
  return P.c == dq.c1;
}

bool case_critical(const EmbeddingParams& P, const DerivedQuantities& dq) {
  if (P.a == 0) return false;
  if (dq.p_star.infinite || P.r <= dq.p_star.value) return false;  // p < N, r > p*
  if (!dq.side.degenerate_equal) return false;                     // ap - N == b - p
  return P.c == dq.c1;
}

std::optional<FailureReason> necessity_failure(const EmbeddingParams& P) {
  validate(P);
  const DerivedQuantities dq = derive(P);
  const Rat n(P.dim);

  // 1. Constants belong to the space exactly when a == 0, and the target
  //    integral of a constant always diverges at one end.
  if (P.a == 0) return FailureReason{FailureTag::AZero, std::nullopt};

  // 2. Outside the closed interval between c0 and c1 no scaling balance
  //    exists at all (for c0 == c1 the interval is the single point).
  if (!in_closed_interval(P.c, dq.c0, dq.c1)) {
    return FailureReason{FailureTag::COutsideInterval, std::nullopt};
  }

  // 3. The sup-only endpoint is never attained when the pivots differ.
  if (!dq.side.degenerate_equal && P.c == dq.c0) {
    return FailureReason{FailureTag::CEqualsC0, std::nullopt};
  }

  // 4. One-sided configurations (b - p at or beyond -N against the sign of a)
  //    truncate the admissible range at -N: a cutoff fixed near the bad end
  //    is itself a counterexample for any c at or beyond -N.
  const bool one_sided = (P.b - P.p <= -n && P.a > 0) || (P.b - P.p >= -n && P.a < 0);
  if (one_sided && !strictly_between(P.c, dq.c0, -n)) {
    return FailureReason{FailureTag::CBeyondMinusN, std::nullopt};
  }

  // 5. With p < N and r > p*, translated-bump families force
  //    theta_c <= p*/r; beyond that the multiplicative balance is untenable.
  if (!dq.side.degenerate_equal && !dq.p_star.infinite && P.r > dq.p_star.value) {
    // c is in the closed interval (step 2) and c0 != c1, so theta_c is set.
    if (!theta_within_critical(*dq.theta_c, dq.p_star, P.r)) {
      return FailureReason{FailureTag::ThetaAboveCritical, std::nullopt};
    }
  }

  // 6. At the gradient endpoint the inequality is a hard continuity statement
  //    that fails whenever r < p.  For c0 != c1 the defeating family is a
  //    scale sequence with exponent k = (b - p + N)/p - a (nonzero here).
  if (P.c == dq.c1 && P.r < P.p) {
    std::optional<Rat> k;
    if (!dq.side.degenerate_equal) {
      Rat kk = (P.b - P.p + n) / P.p - P.a;
      kk.canonicalize();
      k = kk;
    }
    return FailureReason{FailureTag::C1RequiresRAtLeastP, k};
  }

  // 7. Defensive completeness net; see the header note.  Unreachable: r < p
  //    is claimed by step 6 and r > p* by step 5 whenever c0 != c1.
  if (!dq.side.degenerate_equal && P.c == dq.c1 && side_product(P) > 0 &&
      (P.r < P.p || !ext_le(P.r, dq.p_star))) {
    return FailureReason{FailureTag::RRangeForC1, std::nullopt};
  }

  return std::nullopt;
}

Verdict decide_embedding(const EmbeddingParams& P) {
  validate(P);
  Verdict v;
  v.derived = derive(P);
  const DerivedQuantities& dq = v.derived;

  std::optional<EmbeddingCase> label;
  if (case_same_side_interior(P, dq)) {
    label = EmbeddingCase::SameSideInterior;
  } else if (case_opposite_interior(P, dq)) {
    label = EmbeddingCase::OppositeInterior;
  } else if (case_gradient_endpoint(P, dq)) {
    label = EmbeddingCase::GradientEndpoint;
  } else if (case_critical(P, dq)) {
    label = EmbeddingCase::Critical;
  }

  if (!label) {
    v.holds = false;
    v.failure = necessity_failure(P);
    assert(v.failure && "classifier incomplete: no case and no failure reason");
    return v;
  }

  v.holds = true;
  v.case_label = label;

  InequalitySpec spec;
  spec.c_used = P.c;
  switch (*label) {
    case EmbeddingCase::SameSideInterior:
    case EmbeddingCase::OppositeInterior:
      spec.kind = NormInequality::MultiplicativeTheta;
      spec.theta = *dq.theta_c;
      break;
    case EmbeddingCase::GradientEndpoint:
      if (dq.side.degenerate_equal) {
        spec.kind = NormInequality::GradientOnly;
        spec.theta = Rat(1);
      } else {
        // c = c1 with distinct pivots: theta_c = 1, multiplicative form whose
        // sup factor carries exponent zero.
        spec.kind = NormInequality::MultiplicativeTheta;
        spec.theta = Rat(1);
      }
      break;
    case EmbeddingCase::Critical:
      spec.kind = NormInequality::MultiplicativeCritical;
      spec.theta = dq.p_star.value / P.r;
      spec.theta.canonicalize();
      break;
  }
  v.inequality = spec;
  return v;
}

bool decide_c_zero(const EmbeddingParams& P) {
  validate(P);
  if (P.c != 0) throw PreconditionViolated("decide_c_zero requires c == 0");
  if (P.a <= 0) return false;

  const Rat n(P.dim);
  const ExtRat p_star = sobolev_conjugate(P.p, P.dim);
  const Rat n_over_r = n / P.r;
  // N*p*(1/N + 1/r - 1/p) = p + N*p/r - N.
  const Rat b_pivot = P.p + n * P.p / P.r - n;

  if (P.r >= 1 && P.r < P.p) {
    return (P.a < n_over_r && P.b > b_pivot) || (P.a > n_over_r && P.b < b_pivot);
  }
  if (P.r >= P.p && ext_le(P.r, p_star)) {
    return (P.a < n_over_r && P.b >= b_pivot) ||
           (P.a > n_over_r && P.b <= b_pivot) ||
           (P.a == n_over_r && P.b == b_pivot);
  }
  if (!p_star.infinite && P.r > p_star.value) {
    // a*r*p*(1/N + 1/r - 1/p), the pivot with the a-dependent slope.
    const Rat b_pivot_a = P.a * P.r * P.p * (Rat(1) / n + Rat(1) / P.r - Rat(1) / P.p);
    return (P.a < n_over_r && P.b >= b_pivot_a) ||
           (P.a > n_over_r && P.b <= b_pivot_a) ||
           (P.a == n_over_r && P.b == b_pivot_a);
  }
  return false;
}

bool decide_b_c_zero(const EmbeddingParams& P) {
  validate(P);
  if (P.b != 0 || P.c != 0) {
    throw PreconditionViolated("decide_b_c_zero requires b == 0 and c == 0");
  }
  if (P.a <= 0) return false;

  const Rat n(P.dim);
  const ExtRat p_star = sobolev_conjugate(P.p, P.dim);
  if (P.r >= 1 && ext_lt(P.r, p_star) && P.a > n / P.r) return true;
  if (!p_star.infinite && P.r == p_star.value) return true;
  if (!p_star.infinite && P.r > p_star.value && P.a < n / P.r) return true;
  return false;
}

const char* case_name(EmbeddingCase c) {
  switch (c) {
    case EmbeddingCase::SameSideInterior: return "i";
    case EmbeddingCase::OppositeInterior: return "ii";
    case EmbeddingCase::GradientEndpoint: return "iii";
    case EmbeddingCase::Critical: return "iv";
  }
  return "?";
}

const char* failure_name(FailureTag t) {
  switch (t) {
    case FailureTag::AZero: return "a_zero";
    case FailureTag::COutsideInterval: return "c_outside_interval";
    case FailureTag::CEqualsC0: return "c_equals_c0";
    case FailureTag::CBeyondMinusN: return "c_beyond_minus_n";
    case FailureTag::ThetaAboveCritical: return "theta_above_critical";
    case FailureTag::C1RequiresRAtLeastP: return "c1_requires_r_at_least_p";
    case FailureTag::RRangeForC1: return "r_range_for_c1";
  }
  return "?";
}

const char* inequality_name(NormInequality kind) {
  switch (kind) {
    case NormInequality::MultiplicativeTheta: return "multiplicative_theta";
    case NormInequality::GradientOnly: return "gradient_only";
    case NormInequality::MultiplicativeCritical: return "multiplicative_critical";
  }
  return "?";
}

}  // namespace sobolev
