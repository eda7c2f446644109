#include "sobolev/params.hpp"

#include "sobolev/errors.hpp"

namespace sobolev {

void validate(const EmbeddingParams& params) {
  if (params.dim < 1) {
    throw InvalidParams("dim", "must be a positive integer");
  }
  if (params.p < 1) {
    throw InvalidParams("p", "must satisfy p >= 1");
  }
  if (params.r <= 0) {
    throw InvalidParams("r", "must satisfy r > 0");
  }
  if (params.dim >= 2 && params.r < 1) {
    throw InvalidParams("r", "must satisfy r >= 1 when dim >= 2");
  }
}

ExtRat sobolev_conjugate(const Rat& p, int dim) {
  Rat n(dim);
  if (p >= n) return ExtRat::inf();
  Rat conj = n * p / (n - p);
  conj.canonicalize();
  return ExtRat::finite(conj);
}

EmbeddingParams kelvin_dual(const EmbeddingParams& params) {
  Rat two_n(2 * params.dim);
  EmbeddingParams dual;
  dual.dim = params.dim;
  dual.a = -params.a;
  dual.b = 2 * params.p - two_n - params.b;
  dual.c = -two_n - params.c;
  dual.p = params.p;
  dual.r = params.r;
  return dual;
}

bool operator==(const EmbeddingParams& lhs, const EmbeddingParams& rhs) {
  return lhs.dim == rhs.dim && lhs.a == rhs.a && lhs.b == rhs.b &&
         lhs.c == rhs.c && lhs.p == rhs.p && lhs.r == rhs.r;
}

}  // namespace sobolev
