#pragma once

// Internal quadrature building blocks shared between the norm engine and the
// nested-integral checks. Not part of the public interface.

#include <functional>
#include <vector>

namespace sobolev::quad_detail {

// Decisive tail exponents (convergence checks, sup slopes) that land within
// this distance of zero are treated as exactly zero.  Profile exponents are
// assembled from rational parameters in double arithmetic, so a combination
// that vanishes exactly in rational arithmetic can surface as a few ULPs of
// the operands; without snapping, a boundary-exact integrand would be
// classified by rounding noise.  Genuine exponents of this magnitude are
// outside the library's supported parameter range.
inline constexpr double kExponentSnap = 1e-9;

inline double snap_exponent(double e) { return e > -kExponentSnap && e < kExponentSnap ? 0.0 : e; }

// log of integral over [lo, hi] of e^{E*s} ds. lo may be -inf (needs E > 0),
// hi may be +inf (needs E < 0). Returns -inf for an empty range.
double log_exp_integral(double E, double lo, double hi);

struct LineIntegral {
  double log_mass;  // log of the integral of e^{h(s)} ds over the panel set
  double log_err;   // log of the accumulated error estimate
  bool ok;          // error <= tol * mass after refinement
};

// Adaptive Gauss-Kronrod integration of e^{h(s)} over the panel edge list.
// `edges` must be sorted; adjacent pairs become initial panels. Panels are
// split at the midpoint of the worst error estimate until the total estimate
// drops below 0.3 * tol * mass or the split budget is exhausted. Entirely
// sequential and deterministic.
LineIntegral integrate_log_integrand(const std::function<double(double)>& h,
                                     const std::vector<double>& edges, double tol,
                                     int split_budget);

// Log-sum-exp of two log magnitudes.
double lse(double x, double y);

}  // namespace sobolev::quad_detail
