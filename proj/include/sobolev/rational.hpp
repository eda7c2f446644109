#pragma once

// Exact rational scalars used by every boundary decision in the library.
// GMP's mpq_class does the arithmetic; this header adds exact string entry
// (fractions and decimal literals -- never a detour through binary doubles),
// canonical printing, and a tiny extended-rational type for the Sobolev
// conjugate, which is +infinity when p >= dim.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace sobolev {

using Rat = mpq_class;

// Parses "3", "-7/4", "2.5", ".25", "-1.5e-3", "12e2" exactly.
// A decimal literal d1.d2 e k becomes (d1d2 * 10^k) / 10^len(d2) as an exact
// fraction, so the CLI entry "0.1" is one tenth, not the nearest double.
Rat rat_from_string(const std::string& text);

// Canonical form: "n" when the denominator is 1, else "n/d", lowest terms.
std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline Rat rat_int(long n) { return Rat(n); }
inline Rat rat_frac(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// A rational extended with +infinity; just enough for p* bookkeeping.
struct ExtRat {
  bool infinite = false;
  Rat value;  // meaningful only when !infinite

  static ExtRat inf() { return ExtRat{true, Rat(0)}; }
  static ExtRat finite(Rat v) { return ExtRat{false, std::move(v)}; }
};

// Comparisons against a finite rational; anything finite is < +infinity.
inline bool ext_le(const Rat& q, const ExtRat& e) {  // q <= e
  return e.infinite || q <= e.value;
}
inline bool ext_lt(const Rat& q, const ExtRat& e) {  // q < e
  return e.infinite || q < e.value;
}
inline bool ext_gt(const Rat& q, const ExtRat& e) {  // q > e
  return !e.infinite && q > e.value;
}
inline bool ext_eq(const Rat& q, const ExtRat& e) {  // q == e
  return !e.infinite && q == e.value;
}

std::string ext_to_string(const ExtRat& e);

}  // namespace sobolev
