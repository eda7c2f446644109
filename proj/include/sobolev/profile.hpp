#pragma once

// Radial test profiles f : (0, oo) -> R as small expression trees.
//
// Every node evaluates two ways:
//   * in t-space (eval / deriv), by literal composition -- this is what makes
//     scaling an exact identity: evaluating scale(lambda, f) at t IS
//     evaluating f at lambda*t, the same bits;
//   * in log-space (eval_ls / deriv_ls), as sign * exp(lg) with s = ln t --
//     this is what the quadrature and sup engines consume, and it stays finite
//     for supports like [e^-1e6, e^1e6] where t itself overflows a double.
//
// Each node also reports symbolic tail behavior at both ends: identically
// zero beyond a point, exactly a power C*t^e beyond a point, or
// asymptotically a power.  Convergence of every weighted integral is decided
// from these exponents exactly, before any numerics run.

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "sobolev/params.hpp"

namespace sobolev {

// ---------------------------------------------------------------------------
// Signed log-magnitude scalars.

struct LogVal {
  double lg;  // log of |value|; -inf when sign == 0
  int sign;   // -1, 0, +1

  static LogVal zero() { return {-std::numeric_limits<double>::infinity(), 0}; }
  static LogVal from(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
  }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(lg); }
};

LogVal lv_mul(const LogVal& x, const LogVal& y);
LogVal lv_add(const LogVal& x, const LogVal& y);  // signed log-sum-exp

// ---------------------------------------------------------------------------
// Symbolic tail behavior at one end of (0, oo).

struct TailInfo {
  enum class Kind { Zero, ExactPower, Asymptotic };
  Kind kind;
  double coeff;     // signed coefficient of t^exponent (Exact/Asymptotic)
  double exponent;
  // Claim region in s = ln t: s <= log_from at the zero end, s >= log_from at
  // the infinity end.  +/-inf mean "everywhere".
  double log_from;

  static TailInfo zero(double log_from);
  static TailInfo exact(double coeff, double exponent, double log_from);
  static TailInfo asym(double coeff, double exponent, double log_from);
};

// ---------------------------------------------------------------------------
// Expression tree.

enum class NodeKind {
  Power,           // t^e
  Constant,        // k
  Cutoff,          // 1 on (0,1/2], smooth monotone drop, 0 on [1,oo)
  OneMinusCutoff,
  LogBump,         // smooth bump in s = ln t: exp(1 - 1/(1 - u^2)), u = (s-center)/width
  PowerWindow,     // t^e on [lo, hi), else 0
  Sum,
  Product,
  Scale,           // f(lambda * t)
  Kelvin,          // f(1/t)
  PowerTransform,  // f^sigma, sigma >= 1, f >= 0
};

class Profile;
using ProfilePtr = std::shared_ptr<const Profile>;

class Profile {
 public:
  NodeKind kind;
  double par0 = 0.0;  // Power/PowerWindow: exponent; Constant: value;
                      // LogBump: center; Scale: lambda; PowerTransform: sigma
  double par1 = 0.0;  // LogBump: width; PowerWindow: lo (t-space)
  double par2 = 0.0;  // PowerWindow: hi (t-space, may be +inf)
  std::vector<ProfilePtr> kids;

  double eval(double t) const;
  double deriv(double t) const;
  LogVal eval_ls(double s) const;
  LogVal deriv_ls(double s) const;

  // Tail behavior of f (derivative = false) or f' (derivative = true).
  TailInfo tail(bool zero_end, bool derivative) const;

  // Piece boundaries in s = ln t, sorted and deduplicated.
  std::vector<double> log_breakpoints() const;
  // Same in t-space; entries may round to 0 or +inf for extreme supports.
  std::vector<double> breakpoints() const;

  void collect_log_breakpoints(std::vector<double>& out) const;
};

// ---- node constructors ----------------------------------------------------

ProfilePtr power(double exponent);
ProfilePtr constant(double value);
ProfilePtr cutoff();
ProfilePtr one_minus_cutoff();
ProfilePtr log_bump(double center, double width);
ProfilePtr power_window(double exponent, double lo, double hi);
ProfilePtr sum(std::vector<ProfilePtr> kids);
ProfilePtr product(std::vector<ProfilePtr> kids);
ProfilePtr sum(ProfilePtr x, ProfilePtr y);
ProfilePtr product(ProfilePtr x, ProfilePtr y);
ProfilePtr scale(double lambda, ProfilePtr f);         // lambda > 0
ProfilePtr kelvin_image(ProfilePtr f);                 // involution: unwraps a Kelvin child
ProfilePtr power_transform(ProfilePtr f, double sigma);  // sigma >= 1, f >= 0 on grid

// ---- derived families -----------------------------------------------------

// t^{-(c+N)/r} * cutoff: bounded weighted sup, integrable gradient, and a
// target integrand that is exactly t^{-1} near zero -- the canonical witness
// when c sits at or below the admissible interval.
ProfilePtr near_zero_counterexample(const EmbeddingParams& params);
// t^{-(c+N)/r} * (1 - cutoff): same role at infinity.
ProfilePtr near_infinity_counterexample(const EmbeddingParams& params);

// t^{-a} * bump(lambda * ln t): the log-dilation family.  Width in s is
// 2/lambda; all three norms scale by explicit powers of lambda.
ProfilePtr log_bump_family(double a, double lambda);

// ---- separable functions --------------------------------------------------

// Angular factor h on the unit sphere given as a simple function: value v_i
// on a cap of surface fraction w_i.  Means of |h|^s are then closed-form.
struct AngularFactor {
  std::vector<std::pair<double, double>> levels;  // (fraction, value >= 0)

  double mean_power(double s) const;  // M_s = sum_i w_i v_i^s
  double sup() const;

  static AngularFactor uniform(double v = 1.0);
  static AngularFactor two_level(double fraction, double v_inside, double v_outside);
};

struct SeparableFunction {
  ProfilePtr radial;
  AngularFactor angular;
};

// Radial profile of [mean over the sphere of |u|^s]^(1/s) for separable
// u = f(t) h(sigma) with f >= 0:  v(t) = M_s^(1/s) * f(t).
ProfilePtr spherical_mean_power(const SeparableFunction& u, double s);

// Throws ProfileDomainError unless f >= 0 (up to rounding slack) on a
// breakpoint-aware sample grid.
void require_nonneg_on_grid(const ProfilePtr& f, const char* context);

const char* node_kind_name(NodeKind k);

}  // namespace sobolev
