#pragma once

// Numerical certification and refutation on top of the norm engine:
// multiplicative-ratio computations, scale-invariance reports, best-constant
// lower bounds, witness families for every failure reason, and the auxiliary
// one-dimensional inequality checks backing the main embedding argument.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sobolev/decision.hpp"
#include "sobolev/profile.hpp"
#include "sobolev/quad.hpp"

namespace sobolev {

struct RatioEntry {
  std::string profile_id;
  double lambda;
  double ratio;
};

struct RatioReport {
  double theta_used = 0.0;
  std::vector<RatioEntry> ratios;
  double max_ratio = 0.0;
  // max over profiles of (max ratio / min ratio) across the lambda grid
  double scale_invariance_spread = 1.0;
  std::vector<std::pair<std::string, double>> per_profile_spread;
  // profiles dropped because a membership norm diverged
  std::vector<std::string> excluded;
};

enum class RefutationMechanism {
  InfiniteTargetNorm,            // witness profile with divergent target norm
  UnboundedRatioUnderScaling,    // disjoint scaled copies, ratio ~ m^{1/r-1/p}
  UnboundedRatioLogDilation,     // widening log-bumps, ratio ~ lambda^{1/p-1/r}
  UnboundedRatioUnderTranslation  // off-center bumps, ratio ~ R^{(N/p*)(theta-p*/r)}
};

struct RefutationEvidence {
  RefutationMechanism mechanism;
  std::string family;  // construction label, e.g. "constant_one", "log_dilation"
  FailureTag tag;
  // (family parameter, multiplicative ratio or truncated target norm)
  std::vector<std::pair<double, double>> witness_sequence;
  double growth_factor = 0.0;  // last witness value / first witness value
  // InfiniteTargetNorm only: the witness profile's three membership norms
  std::optional<NormTriple> witness_norms;
  std::optional<double> scaling_exponent_k;
};

// ||u||_{c,r} / (||grad||_{b,p}^theta * ||sup||_a^{1-theta}). Throws
// NormDivergent when a norm is infinite, DegenerateProfile when a norm raised
// to a positive exponent vanishes.
double multiplicative_ratio(const ProfilePtr& u, const EmbeddingParams& params,
                            double theta);

// Ratios of Scale(lambda, u) across the lambda grid for each named profile,
// using the theta attached to the holds-verdict. Profiles with a divergent
// membership norm are excluded and listed.
RatioReport scale_invariance_check(
    const EmbeddingParams& params,
    const std::vector<std::pair<std::string, ProfilePtr>>& profiles,
    const std::vector<double>& lambdas);

// Max multiplicative ratio over the family: a certified lower bound for the
// best constant. Throws EmptyFamily on an empty grid.
double best_constant_estimate(const EmbeddingParams& params,
                              const std::vector<ProfilePtr>& family);

// Witness evidence for a fails-verdict, keyed off the FailureReason tag.
// Throws PreconditionViolated when the embedding holds, BudgetExhausted when
// the growth target is not reached within `budget` sweep steps.
RefutationEvidence refute(const EmbeddingParams& params, int budget = 256);

// One-dimensional weighted bound of a primitive by its integrand:
// lhs = (int_0^oo t^alpha (int_0^t g)^p dt)^{1/p},
// rhs = (int_0^oo t^{alpha+p} g(t)^p dt)^{1/p}.
std::pair<double, double> hardy_check(double alpha, double p, const ProfilePtr& g);

// f(t) <= int_0^t |f'| (or int_t^oo |f'| when f vanishes at infinity instead)
// at every sample, within tolerance. The vanishing end is read off the tails.
bool variation_bound_check(const ProfilePtr& f, const std::vector<double>& t_samples);

struct PowerMapNorms {
  double sup_lhs, sup_rhs;    // expected equal
  double grad_lhs, grad_rhs;  // expected lhs <= rhs
};

// For sigma = r/p* > 1 and v = u^sigma: the weighted sup of v with the star
// weight equals the sigma-th power of u's weighted sup, and v's gradient norm
// with the star weight is bounded by sigma * grad(u) * sup(u)^{sigma-1}.
PowerMapNorms power_map_norm_check(const ProfilePtr& u, const EmbeddingParams& params);

// v = spherical_mean_power(u, p) never increases the weighted sup nor the
// radial gradient norm.
bool symmetrization_check(const SeparableFunction& u, const EmbeddingParams& params);

const char* mechanism_name(RefutationMechanism m);

}  // namespace sobolev
