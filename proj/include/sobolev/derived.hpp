#pragma once

// Quantities derived exactly from a parameter pack.  The two pivots
//
//   c0 = a*r - N,            c1 = r*(b - p + N)/p - N,
//
// are the target exponents for which the norm is controlled by the sup part
// alone (c0) or the gradient part alone (c1).  For c between them,
//
//   theta_c = (c - c0)/(c1 - c0)   in [0, 1]
//
// is the interpolation weight, and the identity
//
//   (c + N)/r = theta_c*(b - p + N)/p + (1 - theta_c)*a
//
// holds exactly.  When p < N and r > p*, the companion "star" exponents
// describe the power map u -> u^(r/p*):  a* = a*r/p*,  b* = b + a*p*(r/p* - 1),
// and the critical target exponent  c*1 = (p*/r)*c1 + (1 - p*/r)*c0,
// equivalently  c*1 = p*(b* - p + N)/p - N.

#include <optional>

#include "sobolev/params.hpp"

namespace sobolev {

// Relative position of ap - N and b - p with respect to -N.  Writing
// s = a*(b - p + N):  s > 0 means strictly same side, s < 0 strictly opposite
// sides, s = 0 means at least one of the two points sits exactly at -N.
// When ap - N = b - p the two points coincide (c0 = c1); that configuration
// gets its own tag and is also exposed as a flag, since it can co-occur with
// the strict same-side sign condition.
enum class SideTag {
  SameSideStrict,
  SameSideWithBoundary,
  OppositeStrict,
  DegenerateEqual,
};

struct SideConfig {
  SideTag tag;
  bool degenerate_equal;  // ap - N == b - p
};

struct StarQuantities {
  Rat a_star;
  Rat b_star;
  Rat c_star1;
};

struct DerivedQuantities {
  Rat c0;
  Rat c1;
  // Present iff c0 != c1 and c lies in the closed interval between them.
  std::optional<Rat> theta_c;
  // Interpolation parameter of -N itself; present iff c0 != c1 and -N lies
  // strictly between c0 and c1.
  std::optional<Rat> theta_minus_n;
  ExtRat p_star;
  SideConfig side;
  // Present iff p < dim (p* finite) and r > p*.
  std::optional<StarQuantities> star;
};

DerivedQuantities derive(const EmbeddingParams& params);

}  // namespace sobolev
