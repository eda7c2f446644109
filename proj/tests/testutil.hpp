#pragma once
// Shared helpers for the test binaries: seeded random tuple generation and
// projections onto the decision-boundary manifolds.

#include <cstdint>
#include <random>
#include <vector>

#include "sobolev/params.hpp"
#include "sobolev/rational.hpp"

namespace testutil {

using sobolev::EmbeddingParams;
using sobolev::Rat;

class TupleGen {
 public:
  explicit TupleGen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }

  // Rational with numerator in [lo_num, hi_num] and denominator in [1, max_den].
  Rat rat(long lo_num, long hi_num, long max_den = 4) {
    Rat q(integer(lo_num, hi_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  // A random admissible parameter pack with small numerators/denominators so
  // that boundary coincidences (pivots colliding, critical ratios hit) occur
  // with useful frequency.
  EmbeddingParams tuple() {
    EmbeddingParams params;
    params.dim = static_cast<int>(integer(1, 5));
    params.a = rat(-12, 12);
    params.b = rat(-16, 16);
    params.c = rat(-16, 16);
    params.p = Rat(1) + rat(0, 12);
    const long r_num_lo = params.dim >= 2 ? 4 : 1;
    Rat r(integer(r_num_lo, 24), 4);
    r.canonicalize();
    params.r = r;
    return params;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Project a tuple onto each boundary manifold of the decision diagram. Every
// returned pack is admissible (only b, c, or r move, within their domains).
inline std::vector<EmbeddingParams> boundary_projections(const EmbeddingParams& base) {
  std::vector<EmbeddingParams> out;
  const Rat N(base.dim);
  {
    EmbeddingParams q = base;  // c at the sup-side pivot
    q.c = base.a * base.r - N;
    out.push_back(q);
  }
  {
    EmbeddingParams q = base;  // c at the gradient-side pivot
    q.c = base.r * (base.b - base.p + N) / base.p - N;
    out.push_back(q);
  }
  {
    EmbeddingParams q = base;  // gradient weight at its degenerate offset
    q.b = base.p - N;
    out.push_back(q);
  }
  {
    EmbeddingParams q = base;  // pivots collide
    q.b = base.a * base.p - N + base.p;
    out.push_back(q);
  }
  {
    EmbeddingParams q = base;  // target exponent equals gradient exponent
    q.r = base.p;
    out.push_back(q);
  }
  if (N > base.p) {
    const Rat pstar = N * base.p / (N - base.p);
    {
      EmbeddingParams q = base;  // target exponent critical
      q.r = pstar;
      out.push_back(q);
    }
    {
      EmbeddingParams q = base;  // interpolation weight exactly at its cap
      const Rat c0 = base.a * base.r - N;
      const Rat c1 = base.r * (base.b - base.p + N) / base.p - N;
      q.c = c0 + (pstar / base.r) * (c1 - c0);
      out.push_back(q);
    }
  }
  return out;
}

}  // namespace testutil
