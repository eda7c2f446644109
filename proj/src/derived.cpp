#include "sobolev/derived.hpp"

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

bool strictly_between(const Rat& x, const Rat& lo, const Rat& hi) {
  // Open interval with unordered endpoints.
  return (lo < x && x < hi) || (hi < x && x < lo);
}

bool in_closed_interval(const Rat& x, const Rat& lo, const Rat& hi) {
  return (lo <= x && x <= hi) || (hi <= x && x <= lo);
}

}  // namespace

DerivedQuantities derive(const EmbeddingParams& params) {
  validate(params);
  const Rat n(params.dim);

  DerivedQuantities dq;
  dq.c0 = params.a * params.r - n;
  dq.c1 = params.r * (params.b - params.p + n) / params.p - n;
  dq.c0.canonicalize();
  dq.c1.canonicalize();
  dq.p_star = sobolev_conjugate(params.p, params.dim);

  if (dq.c0 != dq.c1) {
    if (in_closed_interval(params.c, dq.c0, dq.c1)) {
      Rat theta = (params.c - dq.c0) / (dq.c1 - dq.c0);
      theta.canonicalize();
      dq.theta_c = theta;
    }
    if (strictly_between(-n, dq.c0, dq.c1)) {
      Rat theta = (-n - dq.c0) / (dq.c1 - dq.c0);
      theta.canonicalize();
      dq.theta_minus_n = theta;
    }
  }

  // Side classification of ap - N and b - p relative to -N.  The sign of
  // s = a*(b - p + N) encodes it: ap - N and -N differ by ap, and b - p and
  // -N differ by b - p + N, so s > 0 iff both offsets are nonzero with equal
  // sign.  The coincidence ap - N == b - p is tagged separately (and always
  // reported through the flag as well).
  const Rat side_product = params.a * (params.b - params.p + n);
  const bool degenerate = (params.a * params.p - n == params.b - params.p);
  SideTag tag;
  if (degenerate) {
    tag = SideTag::DegenerateEqual;
  } else if (side_product > 0) {
    tag = SideTag::SameSideStrict;
  } else if (side_product < 0) {
    tag = SideTag::OppositeStrict;
  } else {
    tag = SideTag::SameSideWithBoundary;
  }
  dq.side = SideConfig{tag, degenerate};

  if (!dq.p_star.infinite && params.r > dq.p_star.value) {
    // sigma = r/p* > 1; the exponents of the power map u -> u^sigma.
    const Rat sigma = params.r / dq.p_star.value;
    StarQuantities star;
    star.a_star = params.a * sigma;
    star.b_star = params.b + params.a * params.p * (sigma - 1);
    star.c_star1 = (dq.c1 - dq.c0) / sigma + dq.c0;
    star.a_star.canonicalize();
    star.b_star.canonicalize();
    star.c_star1.canonicalize();
    dq.star = star;
  }

  return dq;
}

}  // namespace sobolev
