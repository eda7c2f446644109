#pragma once

// Parameter pack for the embedding
//
//   W(a, b, p | dim)  -->  L^r with weight |x|^c,
//
// where the source space carries the norm  || |x|^a u ||_oo + || |x|^(b/p) grad u ||_p
// over R^dim \ {0}.  All six entries are exact scalars; every classification
// below (derived.hpp, decision.hpp) is decided in exact arithmetic.

#include "sobolev/rational.hpp"

namespace sobolev {

struct EmbeddingParams {
  int dim = 0;  // N >= 1
  Rat a, b, c;  // weight exponents: sup weight a, gradient weight b, target weight c
  Rat p, r;     // integrability exponents
};

// Throws InvalidParams unless: dim >= 1, p >= 1, r > 0, and r >= 1 when
// dim >= 2 (only the one-dimensional theory admits 0 < r < 1).
void validate(const EmbeddingParams& params);

// p* = dim*p/(dim - p) when p < dim, +infinity otherwise.
ExtRat sobolev_conjugate(const Rat& p, int dim);

// Pullback of the parameter pack under inversion x -> x/|x|^2, which is an
// isometry between the corresponding spaces:
//   (dim, a, b, c, p, r)  ->  (dim, -a, 2p - 2dim - b, -2dim - c, p, r).
// An exact involution; verdicts are invariant under it.
EmbeddingParams kelvin_dual(const EmbeddingParams& params);

bool operator==(const EmbeddingParams& lhs, const EmbeddingParams& rhs);

}  // namespace sobolev
