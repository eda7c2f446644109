#include "sobolev/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "quad_internal.hpp"
#include "sobolev/derived.hpp"
#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGrowthTarget = std::log(1000.0);

double dd(const Rat& q) { return rat_to_double(q); }

double require_finite(const QuadResult& q, const char* component) {
  if (q.status == QuadResult::Status::Divergent) throw NormDivergent(component);
  return q.value;
}

// ---------------------------------------------------------------------------
// Growth sweeps shared by all refutation mechanisms.

struct SweepOut {
  std::vector<std::pair<double, double>> seq;
  double growth = 1.0;
};

SweepOut growth_sweep(const std::function<double(int)>& param_at,
                      const std::function<double(double)>& ln_value_at, int budget,
                      const char* label) {
  if (budget < 2) throw PreconditionViolated("witness budget must allow at least two steps");
  SweepOut out;
  double ln0 = 0.0;
  for (int j = 0; j < budget; ++j) {
    const double par = param_at(j);
    const double lnv = ln_value_at(par);
    out.seq.emplace_back(par, std::exp(lnv));
    if (j == 0) {
      ln0 = lnv;
      continue;
    }
    out.growth = std::exp(lnv - ln0);
    if (lnv - ln0 >= kGrowthTarget) return out;
  }
  throw BudgetExhausted(std::string(label) + ": growth target not reached within budget",
                        out.growth);
}

// ---------------------------------------------------------------------------
// Refutation mechanisms.

RefutationEvidence refute_infinite_target(const EmbeddingParams& params,
                                          const ProfilePtr& witness, const char* family,
                                          const FailureReason& reason, int budget) {
  NormTriple norms = membership_norms(witness, params);
  if (norms.target_norm.status != QuadResult::Status::Divergent ||
      !norms.target_norm.divergence)
    throw PreconditionViolated("internal: witness target norm failed to diverge");
  if (norms.sup_norm.status == QuadResult::Status::Divergent ||
      norms.grad_norm.status == QuadResult::Status::Divergent)
    throw PreconditionViolated("internal: witness membership norm diverged");

  const bool at_zero = norms.target_norm.divergence->at_zero;
  const double c_d = dd(params.c);
  const double r_d = dd(params.r);
  const double af = sphere_measure_factor(params.dim);
  auto param_at = [](int j) { return 4.0 * std::pow(8.0, j); };
  auto value_at = [&](double cap) {
    const double lo = at_zero ? -cap : -1.0;
    const double hi = at_zero ? 1.0 : cap;
    const QuadResult q = truncated_lr_norm(witness, c_d, r_d, params.dim, af, lo, hi);
    return std::log(q.value);
  };
  SweepOut sweep = growth_sweep(param_at, value_at, budget, family);

  RefutationEvidence ev;
  ev.mechanism = RefutationMechanism::InfiniteTargetNorm;
  ev.family = family;
  ev.tag = reason.tag;
  ev.witness_sequence = std::move(sweep.seq);
  ev.growth_factor = sweep.growth;
  ev.witness_norms = norms;
  if (reason.scaling_exponent_k) ev.scaling_exponent_k = dd(*reason.scaling_exponent_k);
  return ev;
}

// Bump centered off the origin at radius R, rescaled about the origin so the
// gradient and sup parts of the membership norm balance.  The support of the
// base bump sits inside the unit ball, so every radius seen by a weight lies
// in [R - 1, R + 1]; taking the pessimistic end of that range for each norm
// gives a closed-form lower bound on the full-norm ratio
//     target / (gradient + sup).
// At the balancing dilation the bound equals
//     T_lo - theta*G_hi - (1 - theta)*S_hi - ln 2
// in logs (dilation shifts the three norms along their scaling exponents, and
// this combination is the dilation-invariant one), which grows like
// R^{(N/p*) (theta_c - p*/r)}.
RefutationEvidence refute_translation(const EmbeddingParams& params,
                                      const FailureReason& reason, int budget) {
  const DerivedQuantities dq = derive(params);
  const double theta = dd(*dq.theta_c);
  const int n = params.dim;
  const double af = sphere_measure_factor(n);
  const double r_d = dd(params.r);
  const double p_d = dd(params.p);

  const ProfilePtr base = log_bump(-2.0, 1.5);  // support [e^-3.5, e^-0.5] in t
  const double lnT0 =
      std::log(require_finite(weighted_lr_norm(base, 0.0, r_d, n, af), "target"));
  const double lnG0 =
      std::log(require_finite(weighted_grad_lr_norm(base, 0.0, p_d, n, af), "gradient"));
  const double lnS0 = std::log(require_finite(weighted_sup_norm(base, 0.0), "sup"));

  const double slope_T = dd(params.c) / r_d;
  const double slope_G = dd(params.b) / p_d;
  const double slope_S = dd(params.a);
  auto lo_pow = [](double w, double R) {
    return w >= 0.0 ? w * std::log(R - 1.0) : w * std::log(R + 1.0);
  };
  auto hi_pow = [](double w, double R) {
    return w >= 0.0 ? w * std::log(R + 1.0) : w * std::log(R - 1.0);
  };

  auto param_at = [](int j) { return 8.0 * std::pow(2.0, j); };
  auto value_at = [&](double R) {
    const double t_lo = lnT0 + lo_pow(slope_T, R);
    const double g_hi = lnG0 + hi_pow(slope_G, R);
    const double s_hi = lnS0 + hi_pow(slope_S, R);
    return t_lo - theta * g_hi - (1.0 - theta) * s_hi - std::log(2.0);
  };
  SweepOut sweep = growth_sweep(param_at, value_at, budget, "translated_bump");

  RefutationEvidence ev;
  ev.mechanism = RefutationMechanism::UnboundedRatioUnderTranslation;
  ev.family = "translated_bump";
  ev.tag = reason.tag;
  ev.witness_sequence = std::move(sweep.seq);
  ev.growth_factor = sweep.growth;
  return ev;
}

// m weighted copies of a compact bump, pairwise disjoint in log radius at
// spacing 4*sign(k).  Copy j is scaled so its target and gradient norms stay
// at the base values (possible because the target weight sits at the
// gradient-only pivot), while the sup of copy j shrinks by e^{-4 j |k|}, so
// the sup of the sum is the base sup.  Exact additivity over the disjoint
// supports gives
//     ratio(m) = m^{1/r} T0 / (m^{1/p} G0 + S0),
// unbounded since r < p.
RefutationEvidence refute_scaled_copies(const EmbeddingParams& params,
                                        const FailureReason& reason, int budget) {
  const int n = params.dim;
  const double af = sphere_measure_factor(n);
  const double r_d = dd(params.r);
  const double p_d = dd(params.p);

  const ProfilePtr base = log_bump(0.0, 1.0);
  const double lnT0 = std::log(
      require_finite(weighted_lr_norm(base, dd(params.c), r_d, n, af), "target"));
  const double lnG0 = std::log(
      require_finite(weighted_grad_lr_norm(base, dd(params.b), p_d, n, af), "gradient"));
  const double lnS0 =
      std::log(require_finite(weighted_sup_norm(base, dd(params.a)), "sup"));

  auto param_at = [](int j) { return std::pow(2.0, j); };  // copy count m
  auto value_at = [&](double m) {
    const double lnm = std::log(m);
    return (lnT0 + lnm / r_d) - quad_detail::lse(lnG0 + lnm / p_d, lnS0);
  };
  SweepOut sweep = growth_sweep(param_at, value_at, budget, "disjoint_scaled_copies");

  RefutationEvidence ev;
  ev.mechanism = RefutationMechanism::UnboundedRatioUnderScaling;
  ev.family = "disjoint_scaled_copies";
  ev.tag = reason.tag;
  ev.witness_sequence = std::move(sweep.seq);
  ev.growth_factor = sweep.growth;
  ev.scaling_exponent_k = dd(*reason.scaling_exponent_k);
  return ev;
}

// Degenerate pivot (c0 = c1 = c) with r < p: widen a log-space bump.  With
// f_lambda = t^{-a} g(lambda ln t) the sup is exactly 1, the target norm is
// exactly (af/lambda)^{1/r} |g|_r, and the gradient norm is bounded above via
// Minkowski by (af/lambda)^{1/p} (|a| |g|_p + lambda |g'|_p), so the ratio
// lower bound grows like lambda^{1/p - 1/r} as lambda -> 0.
RefutationEvidence refute_log_dilation(const EmbeddingParams& params,
                                       const FailureReason& reason, int budget) {
  const double a_d = dd(params.a);
  const double r_d = dd(params.r);
  const double p_d = dd(params.p);
  const double lnaf = std::log(sphere_measure_factor(params.dim));

  // One-dimensional constants of the bump in the log variable; the truncation
  // covers the full support [-1, 1], and the weight choices make the measure
  // factor exactly ds.
  const ProfilePtr g = log_bump(0.0, 1.0);
  const double jr = truncated_lr_norm(g, -1.0, r_d, 1, 1.0, -1.001, 1.001).value;
  const double jp = truncated_lr_norm(g, -1.0, p_d, 1, 1.0, -1.001, 1.001).value;
  const double jg =
      truncated_grad_lr_norm(g, p_d - 1.0, p_d, 1, 1.0, -1.001, 1.001).value;

  auto param_at = [](int j) { return std::pow(2.0, -j); };
  auto value_at = [&](double lam) {
    const double lnT = (lnaf - std::log(lam)) / r_d + std::log(jr);
    const double lnG =
        (lnaf - std::log(lam)) / p_d + std::log(std::fabs(a_d) * jp + lam * jg);
    return lnT - quad_detail::lse(lnG, 0.0);  // sup term is exactly 1
  };
  SweepOut sweep = growth_sweep(param_at, value_at, budget, "log_dilation");

  RefutationEvidence ev;
  ev.mechanism = RefutationMechanism::UnboundedRatioLogDilation;
  ev.family = "log_dilation";
  ev.tag = reason.tag;
  ev.witness_sequence = std::move(sweep.seq);
  ev.growth_factor = sweep.growth;
  return ev;
}

}  // namespace

// ---------------------------------------------------------------------------

double multiplicative_ratio(const ProfilePtr& u, const EmbeddingParams& params,
                            double theta) {
  validate(params);
  if (!(theta >= 0.0 && theta <= 1.0))
    throw PreconditionViolated("interpolation weight must lie in [0, 1]");
  NormTriple norms = membership_norms(u, params);
  const double target = require_finite(norms.target_norm, "target");
  double grad = 0.0, sup = 0.0;
  if (theta > 0.0) grad = require_finite(norms.grad_norm, "gradient");
  if (theta < 1.0) sup = require_finite(norms.sup_norm, "sup");
  if ((theta > 0.0 && grad == 0.0) || (theta < 1.0 && sup == 0.0))
    throw DegenerateProfile("denominator norm vanishes");
  if (target == 0.0) return 0.0;
  double ln_den = 0.0;
  if (theta > 0.0) ln_den += theta * std::log(grad);
  if (theta < 1.0) ln_den += (1.0 - theta) * std::log(sup);
  return std::exp(std::log(target) - ln_den);
}

RatioReport scale_invariance_check(
    const EmbeddingParams& params,
    const std::vector<std::pair<std::string, ProfilePtr>>& profiles,
    const std::vector<double>& lambdas) {
  validate(params);
  if (profiles.empty()) throw EmptyFamily("no profiles supplied");
  if (lambdas.empty()) throw EmptyFamily("no scale factors supplied");
  for (double lam : lambdas)
    if (!(lam > 0.0) || !std::isfinite(lam))
      throw PreconditionViolated("scale factors must be positive and finite");

  const Verdict v = decide_embedding(params);
  if (!v.holds)
    throw PreconditionViolated("embedding does not hold for this tuple; use refute");

  RatioReport rep;
  rep.theta_used = dd(v.inequality->theta);
  for (const auto& [id, u] : profiles) {
    std::vector<RatioEntry> local;
    bool divergent = false;
    for (double lam : lambdas) {
      try {
        local.push_back({id, lam, multiplicative_ratio(scale(lam, u), params, rep.theta_used)});
      } catch (const NormDivergent&) {
        divergent = true;
        break;
      }
    }
    if (divergent) {
      rep.excluded.push_back(id);
      continue;
    }
    double lo = kInf, hi = 0.0;
    for (const RatioEntry& e : local) {
      lo = std::min(lo, e.ratio);
      hi = std::max(hi, e.ratio);
      rep.max_ratio = std::max(rep.max_ratio, e.ratio);
    }
    const double spread = lo > 0.0 ? hi / lo : kInf;
    rep.per_profile_spread.emplace_back(id, spread);
    rep.scale_invariance_spread = std::max(rep.scale_invariance_spread, spread);
    rep.ratios.insert(rep.ratios.end(), local.begin(), local.end());
  }
  return rep;
}

double best_constant_estimate(const EmbeddingParams& params,
                              const std::vector<ProfilePtr>& family) {
  validate(params);
  if (family.empty()) throw EmptyFamily("no profiles in the family");
  const Verdict v = decide_embedding(params);
  if (!v.holds)
    throw PreconditionViolated("embedding does not hold for this tuple; use refute");
  const double theta = dd(v.inequality->theta);
  double best = 0.0;
  for (const ProfilePtr& u : family)
    best = std::max(best, multiplicative_ratio(u, params, theta));
  return best;
}

RefutationEvidence refute(const EmbeddingParams& params, int budget) {
  validate(params);
  const Verdict v = decide_embedding(params);
  if (v.holds)
    throw PreconditionViolated("embedding holds for this tuple; nothing to refute");
  const FailureReason& reason = *v.failure;
  const DerivedQuantities& dq = v.derived;

  switch (reason.tag) {
    case FailureTag::AZero:
      return refute_infinite_target(params, constant(1.0), "constant_one", reason, budget);
    case FailureTag::COutsideInterval: {
      const Rat cmin = std::min(dq.c0, dq.c1);
      const bool below = params.c < cmin;
      return refute_infinite_target(
          params,
          below ? near_zero_counterexample(params) : near_infinity_counterexample(params),
          below ? "window_power_zero" : "window_power_infinity", reason, budget);
    }
    case FailureTag::CEqualsC0: {
      // Divergence side is where the gradient norm still converges: toward
      // zero when c1 > c0, toward infinity otherwise.
      const bool zero_side = dq.c1 > dq.c0;
      const ProfilePtr w = product(power(-dd(params.a)),
                                   zero_side ? cutoff() : one_minus_cutoff());
      return refute_infinite_target(params, w, "sup_weight_power", reason, budget);
    }
    case FailureTag::CBeyondMinusN: {
      // With a > 0 the open admissible interval is (-N, c0) and the tag forces
      // c <= -N, so a plateau at zero has divergent target norm; the a < 0
      // configuration mirrors at infinity.
      const bool a_pos = params.a > 0;
      return refute_infinite_target(params, a_pos ? cutoff() : one_minus_cutoff(),
                                    a_pos ? "plateau_zero" : "plateau_infinity", reason,
                                    budget);
    }
    case FailureTag::ThetaAboveCritical:
      return refute_translation(params, reason, budget);
    case FailureTag::C1RequiresRAtLeastP:
      return reason.scaling_exponent_k ? refute_scaled_copies(params, reason, budget)
                                       : refute_log_dilation(params, reason, budget);
    case FailureTag::RRangeForC1:
      throw PreconditionViolated("defensive failure tag carries no witness family");
  }
  throw PreconditionViolated("unhandled failure tag");
}

// ---------------------------------------------------------------------------
// Primitive-vs-integrand inequality (nested quadrature).

namespace {

struct InnerPrimitive {
  std::function<double(double)> h;  // log of the inner integrand e^{s} g(e^s)
  std::vector<double> edges;        // panel edges covering [a_in, b_in]
  std::vector<double> prefix;       // prefix[i] = log mass over [edges[0], edges[i]]
  TailInfo tz{TailInfo::Kind::Zero, 0, 0, 0}, ti{TailInfo::Kind::Zero, 0, 0, 0};
  double e_zero = 0.0, e_inf = 0.0;  // inner tail rates 1 + exponent, snapped
  double a_in = 0.0, b_in = 0.0;
  double zero_full = -kInf;  // log mass of (-inf, a_in]
  double total = -kInf;      // log of the primitive's limit at +inf
};

double primitive_edge(const TailInfo& t, double rate, bool zero_end, double tol) {
  if (t.kind != TailInfo::Kind::Asymptotic) return t.log_from;
  const double margin =
      std::min(std::log(4.0 / tol) / std::max(std::fabs(rate), 0.05), 400.0);
  return zero_end ? t.log_from - margin : t.log_from + margin;
}

InnerPrimitive build_primitive(const ProfilePtr& g, double tol) {
  InnerPrimitive pr;
  pr.tz = g->tail(true, false);
  pr.ti = g->tail(false, false);
  pr.e_zero = quad_detail::snap_exponent(1.0 + pr.tz.exponent);
  pr.e_inf = quad_detail::snap_exponent(1.0 + pr.ti.exponent);

  if (pr.tz.kind != TailInfo::Kind::Zero && pr.e_zero <= 0.0)
    throw NormDivergent("primitive");
  if (pr.ti.kind != TailInfo::Kind::Zero && pr.e_inf >= 0.0)
    throw PreconditionViolated("integrand primitive must stay bounded");

  double a = primitive_edge(pr.tz, pr.e_zero, true, tol);
  double b = primitive_edge(pr.ti, pr.e_inf, false, tol);
  a = std::clamp(a, -1.0e6, 1.0e6);
  b = std::clamp(b, -1.0e6, 1.0e6);
  if (a > b) {
    const double s = std::clamp(0.0, b, a);
    a = b = s;
  }
  pr.a_in = a;
  pr.b_in = b;

  const Profile* raw = g.get();
  pr.h = [raw](double s) {
    const LogVal v = raw->eval_ls(s);
    return v.sign == 0 ? -kInf : v.lg + s;
  };

  pr.edges.push_back(a);
  if (b > a) {
    std::vector<double> marks;
    for (double q : g->log_breakpoints())
      if (q > a && q < b) marks.push_back(q);
    marks.push_back(b);
    const double width = std::max(0.5, (b - a) / 512.0);
    double prev = a;
    for (double m : marks) {
      const double len = m - prev;
      const int pieces = std::max(1, static_cast<int>(std::ceil(len / width)));
      for (int j = 1; j < pieces; ++j) pr.edges.push_back(prev + len * j / pieces);
      pr.edges.push_back(m);
      prev = m;
    }
  }

  pr.prefix.assign(pr.edges.size(), -kInf);
  for (size_t i = 0; i + 1 < pr.edges.size(); ++i) {
    const auto li = quad_detail::integrate_log_integrand(
        pr.h, {pr.edges[i], pr.edges[i + 1]}, 1e-10, 4);
    pr.prefix[i + 1] = quad_detail::lse(pr.prefix[i], li.log_mass);
  }

  if (pr.tz.kind != TailInfo::Kind::Zero)
    pr.zero_full = std::log(pr.tz.coeff) +
                   quad_detail::log_exp_integral(pr.e_zero, -kInf, pr.a_in);
  pr.total = quad_detail::lse(pr.zero_full, pr.prefix.back());
  if (pr.ti.kind != TailInfo::Kind::Zero)
    pr.total = quad_detail::lse(
        pr.total, std::log(pr.ti.coeff) +
                      quad_detail::log_exp_integral(pr.e_inf, pr.b_in, kInf));
  return pr;
}

// log of int_0^{e^s} g, assembled from the closed zero piece, the panel
// prefix, one partial panel, and the closed residual beyond b_in.
double primitive_log(const InnerPrimitive& pr, double s) {
  if (s <= pr.a_in) {
    if (pr.tz.kind == TailInfo::Kind::Zero) return -kInf;
    return std::log(pr.tz.coeff) + quad_detail::log_exp_integral(pr.e_zero, -kInf, s);
  }
  double acc = pr.zero_full;
  const auto it = std::upper_bound(pr.edges.begin(), pr.edges.end(), s);
  const size_t k = static_cast<size_t>(it - pr.edges.begin()) - 1;  // edges[k] <= s
  acc = quad_detail::lse(acc, pr.prefix[k]);
  if (k + 1 < pr.edges.size()) {
    if (s > pr.edges[k]) {
      const auto li =
          quad_detail::integrate_log_integrand(pr.h, {pr.edges[k], s}, 1e-10, 4);
      acc = quad_detail::lse(acc, li.log_mass);
    }
  } else if (s > pr.b_in && pr.ti.kind != TailInfo::Kind::Zero) {
    acc = quad_detail::lse(
        acc, std::log(pr.ti.coeff) +
                 quad_detail::log_exp_integral(pr.e_inf, pr.b_in, std::min(s, 1.0e6)));
  }
  return acc;
}

}  // namespace

std::pair<double, double> hardy_check(double alpha, double p, const ProfilePtr& g) {
  if (!g) throw PreconditionViolated("null integrand");
  if (!(p >= 1.0)) throw PreconditionViolated("outer power must be >= 1");
  if (!(alpha < -1.0)) throw PreconditionViolated("outer weight exponent must be < -1");
  require_nonneg_on_grid(g, "inner integrand");

  // Right-hand side first; divergence here makes the comparison vacuous.
  const QuadResult rhs = weighted_lr_norm(g, alpha + p, p, 1, 1.0);
  if (rhs.status == QuadResult::Status::Divergent) throw NormDivergent("rhs");

  const double tol = 1e-9;
  const InnerPrimitive pr = build_primitive(g, tol);

  // Closed outer piece below a_in, where the primitive is an exact power.
  double zero_piece = -kInf;
  if (pr.tz.kind != TailInfo::Kind::Zero) {
    const double e_out = alpha + 1.0 + p * pr.e_zero;
    if (e_out <= 0.0) throw NormDivergent("lhs");
    zero_piece = p * (std::log(pr.tz.coeff) - std::log(pr.e_zero)) +
                 quad_detail::log_exp_integral(e_out, -kInf, pr.a_in);
  }

  // Beyond b_out the primitive equals its limit up to a relative residual of
  // at most tol/2 (so the closed piece is accurate to p*tol/2 relative); the
  // residual window [b_in, b_out] is integrated numerically.
  double b_out = pr.b_in;
  if (pr.ti.kind != TailInfo::Kind::Zero) {
    const double cut = (std::log(tol / 2.0) + std::log(-pr.e_inf) + pr.total -
                        std::log(pr.ti.coeff)) /
                       pr.e_inf;
    b_out = std::clamp(cut, pr.b_in, pr.b_in + 400.0);
  }
  const double inf_piece =
      p * pr.total + quad_detail::log_exp_integral(alpha + 1.0, b_out, kInf);

  // Numeric outer core over [a_in, b_out].
  double core = -kInf;
  if (b_out > pr.a_in) {
    std::vector<double> edges = pr.edges;
    if (b_out > pr.edges.back()) {
      const double len = b_out - pr.edges.back();
      const int pieces = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
      for (int j = 1; j <= pieces; ++j)
        edges.push_back(pr.edges.back() + len * j / pieces);
    }
    auto h_out = [&](double s) { return (alpha + 1.0) * s + p * primitive_log(pr, s); };
    const auto li = quad_detail::integrate_log_integrand(h_out, edges, tol, 40);
    core = li.log_mass;
  }

  const double total = quad_detail::lse(zero_piece, quad_detail::lse(core, inf_piece));
  const double lhs = total == -kInf ? 0.0 : std::exp(total / p);
  return {lhs, rhs.value};
}

// ---------------------------------------------------------------------------

bool variation_bound_check(const ProfilePtr& f, const std::vector<double>& t_samples) {
  if (!f) throw PreconditionViolated("null profile");
  const TailInfo tz = f->tail(true, false);
  const TailInfo ti = f->tail(false, false);
  bool from_zero;
  if (tz.kind == TailInfo::Kind::Zero || quad_detail::snap_exponent(tz.exponent) > 0.0)
    from_zero = true;
  else if (ti.kind == TailInfo::Kind::Zero || quad_detail::snap_exponent(ti.exponent) < 0.0)
    from_zero = false;
  else
    throw PreconditionViolated("profile does not vanish at either end");

  for (double t : t_samples) {
    if (!(t > 0.0) || !std::isfinite(t))
      throw PreconditionViolated("sample points must be positive and finite");
    const double fv = std::fabs(f->eval(t));
    const double s = std::log(t);
    const QuadResult q = from_zero
                             ? truncated_grad_lr_norm(f, 0.0, 1.0, 1, 1.0, -kInf, s)
                             : truncated_grad_lr_norm(f, 0.0, 1.0, 1, 1.0, s, kInf);
    const double bound = q.status == QuadResult::Status::Divergent ? kInf : q.value;
    if (!(fv <= bound * (1.0 + 1e-8) + 1e-12)) return false;
  }
  return true;
}

PowerMapNorms power_map_norm_check(const ProfilePtr& u, const EmbeddingParams& params) {
  validate(params);
  const DerivedQuantities dq = derive(params);
  if (!dq.star)
    throw PreconditionViolated("power-map exponents require p < dim and r > p*");
  const double sigma = dd(params.r / dq.p_star.value);
  const ProfilePtr v = power_transform(u, sigma);
  const double af = sphere_measure_factor(params.dim);
  const double p_d = dd(params.p);

  PowerMapNorms out;
  const double su = require_finite(weighted_sup_norm(u, dd(params.a)), "sup");
  const double gu =
      require_finite(weighted_grad_lr_norm(u, dd(params.b), p_d, params.dim, af),
                     "gradient");
  out.sup_lhs = require_finite(weighted_sup_norm(v, dd(dq.star->a_star)), "sup");
  out.sup_rhs = std::pow(su, sigma);
  out.grad_lhs = require_finite(
      weighted_grad_lr_norm(v, dd(dq.star->b_star), p_d, params.dim, af), "gradient");
  out.grad_rhs = sigma * gu * std::pow(su, sigma - 1.0);
  return out;
}

bool symmetrization_check(const SeparableFunction& u, const EmbeddingParams& params) {
  validate(params);
  require_nonneg_on_grid(u.radial, "separable radial part");
  const double af = sphere_measure_factor(params.dim);
  const NormTriple orig = membership_norms(u, params);
  const ProfilePtr v = spherical_mean_power(u, dd(params.p));

  const QuadResult vs = weighted_sup_norm(v, dd(params.a));
  if (orig.sup_norm.status != QuadResult::Status::Divergent) {
    if (vs.status == QuadResult::Status::Divergent) return false;
    if (vs.value > orig.sup_norm.value * (1.0 + 1e-8) + 1e-12) return false;
  }
  const QuadResult vg =
      weighted_grad_lr_norm(v, dd(params.b), dd(params.p), params.dim, af);
  if (orig.grad_norm.status != QuadResult::Status::Divergent) {
    if (vg.status == QuadResult::Status::Divergent) return false;
    if (vg.value > orig.grad_norm.value * (1.0 + 1e-8) + 1e-12) return false;
  }
  return true;
}

const char* mechanism_name(RefutationMechanism m) {
  switch (m) {
    case RefutationMechanism::InfiniteTargetNorm:
      return "infinite_target_norm";
    case RefutationMechanism::UnboundedRatioUnderScaling:
      return "unbounded_ratio_under_scaling";
    case RefutationMechanism::UnboundedRatioLogDilation:
      return "unbounded_ratio_log_dilation";
    case RefutationMechanism::UnboundedRatioUnderTranslation:
      return "unbounded_ratio_under_translation";
  }
  return "unknown";
}

}  // namespace sobolev
