#pragma once

// Weighted-norm engine for radial profiles on (0, oo).
//
// Every integral is transformed by t = e^s, so a power-weighted integrand
// t^{w+N-1}|f(t)|^rho dt becomes e^{(w+N)s}|f(e^s)|^rho ds on the whole line.
// Convergence at each end is decided symbolically from the profile's tail
// exponents before any numeric work; identically-power regions are integrated
// in closed form, and only the remaining compact core is fed to adaptive
// Gauss-Kronrod panels.  Panel masses are combined in log space so supports
// like [e^{-10^6}, e^{10^6}] and huge truncation ranges never overflow.

#include <optional>
#include <vector>

#include "sobolev/params.hpp"
#include "sobolev/profile.hpp"
#include "sobolev/rational.hpp"

namespace sobolev {

struct DivergenceInfo {
  bool at_zero;           // true: divergence at t -> 0+, false: at t -> oo
  double local_exponent;  // leading power exponent of |f| (or |f'|) at that end
};

struct QuadResult {
  enum class Status { Converged, Divergent, MaxRefinementReached };
  double value = 0.0;      // +inf when Divergent
  double abs_error = 0.0;  // <= tol * value when Converged
  Status status = Status::Converged;
  std::optional<DivergenceInfo> divergence;
};

struct NormTriple {
  QuadResult sup_norm;     // sup of t^a |f(t)| (times the angular sup if separable)
  QuadResult grad_norm;    // weighted L^p norm of the radial derivative
  QuadResult target_norm;  // weighted L^r norm of the profile itself
};

// Exact powers of lambda by which each norm transforms under f -> f(lambda t):
// target by lambda^{-(c+N)/r}, sup by lambda^{-a}, grad by lambda^{-(b-p+N)/p}.
struct ScalingExponents {
  Rat target;
  Rat sup;
  Rat grad;
};

// (angular_factor * integral_0^oo t^{weight_exp + dim - 1} |f|^power dt)^{1/power}.
QuadResult weighted_lr_norm(const ProfilePtr& f, double weight_exp, double power, int dim,
                            double angular_factor, double tol = 1e-8);

// Same, with |f'| in place of |f|.
QuadResult weighted_grad_lr_norm(const ProfilePtr& f, double weight_exp, double power,
                                 int dim, double angular_factor, double tol = 1e-8);

// Same integrals restricted to ln t in [log_lo, log_hi]; always finite.
QuadResult truncated_lr_norm(const ProfilePtr& f, double weight_exp, double power, int dim,
                             double angular_factor, double log_lo, double log_hi,
                             double tol = 1e-8);
QuadResult truncated_grad_lr_norm(const ProfilePtr& f, double weight_exp, double power,
                                  int dim, double angular_factor, double log_lo,
                                  double log_hi, double tol = 1e-8);

// sup over t in (0, oo) of t^{weight_exp} |f(t)|: log-grid scan plus
// golden-section refinement, with analytic end limits from the tails.
QuadResult weighted_sup_norm(const ProfilePtr& f, double weight_exp);

// The three membership norms (sup with weight a, gradient with (b, p), target
// with (c, r)); statuses are reported per component, never thrown.
NormTriple membership_norms(const ProfilePtr& f, const EmbeddingParams& params,
                            double tol = 1e-8);
NormTriple membership_norms(const SeparableFunction& u, const EmbeddingParams& params,
                            double tol = 1e-8);

ScalingExponents scaling_exponents(const EmbeddingParams& params);

// N * omega_N: surface measure of the unit sphere in R^N.
double sphere_measure_factor(int dim);

}  // namespace sobolev
