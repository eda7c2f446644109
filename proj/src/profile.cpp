#include "sobolev/profile.hpp"

#include <algorithm>
#include <cmath>

#include "sobolev/errors.hpp"
#include "sobolev/rational.hpp"

namespace sobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogHalf = std::log(0.5);

// phi(s) = exp(-1/s) for s > 0, else 0: the standard smooth step ingredient.
double phi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double phi_prime(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }

// cutoff(t): 1 on (0,1/2], phi(2-2t)/(phi(2-2t)+phi(2t-1)) on (1/2,1), 0 on [1,oo).
double cutoff_value(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = phi(2.0 - 2.0 * t);
  const double b = phi(2.0 * t - 1.0);
  return a / (a + b);
}

double cutoff_deriv(double t) {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const double a = phi(2.0 - 2.0 * t);
  const double b = phi(2.0 * t - 1.0);
  const double num = phi_prime(2.0 - 2.0 * t) * b + phi_prime(2.0 * t - 1.0) * a;
  const double den = a + b;
  return -2.0 * num / (den * den);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ProfileDomainError(std::string(what) + " must be finite");
}

ProfilePtr make_node(NodeKind kind, double p0 = 0.0, double p1 = 0.0, double p2 = 0.0,
                     std::vector<ProfilePtr> kids = {}) {
  auto node = std::make_shared<Profile>();
  node->kind = kind;
  node->par0 = p0;
  node->par1 = p1;
  node->par2 = p2;
  node->kids = std::move(kids);
  return node;
}

// ---- tail combination -----------------------------------------------------

// Intersection / union of one-sided claim regions in s.
double restrict_from(double q1, double q2, bool zero_end) {
  return zero_end ? std::min(q1, q2) : std::max(q1, q2);
}
double union_from(double q1, double q2, bool zero_end) {
  return zero_end ? std::max(q1, q2) : std::min(q1, q2);
}

// True when exponent e1 dominates e2 toward the given end.
bool dominates(double e1, double e2, bool zero_end) {
  return zero_end ? e1 < e2 : e1 > e2;
}

TailInfo tail_sum(const TailInfo& x, const TailInfo& y, bool zero_end) {
  using K = TailInfo::Kind;
  if (x.kind == K::Zero && y.kind == K::Zero)
    return TailInfo::zero(restrict_from(x.log_from, y.log_from, zero_end));
  if (x.kind == K::Zero || y.kind == K::Zero) {
    const TailInfo& live = x.kind == K::Zero ? y : x;
    TailInfo out = live;
    out.log_from = restrict_from(x.log_from, y.log_from, zero_end);
    return out;
  }
  const double from = restrict_from(x.log_from, y.log_from, zero_end);
  if (x.kind == K::ExactPower && y.kind == K::ExactPower) {
    if (x.exponent == y.exponent) return TailInfo::exact(x.coeff + y.coeff, x.exponent, from);
    const TailInfo& dom = dominates(x.exponent, y.exponent, zero_end) ? x : y;
    return TailInfo::asym(dom.coeff, dom.exponent, from);
  }
  // At least one side is only asymptotic.
  if (x.exponent == y.exponent) {
    const double coeff = x.coeff + y.coeff;
    if (coeff == 0.0)
      throw ProfileDomainError("leading tail terms cancel; end behavior is not certifiable");
    return TailInfo::asym(coeff, x.exponent, from);
  }
  const TailInfo& dom = dominates(x.exponent, y.exponent, zero_end) ? x : y;
  return TailInfo::asym(dom.coeff, dom.exponent, from);
}

TailInfo tail_prod(const TailInfo& x, const TailInfo& y, bool zero_end) {
  using K = TailInfo::Kind;
  if (x.kind == K::Zero && y.kind == K::Zero)
    return TailInfo::zero(union_from(x.log_from, y.log_from, zero_end));
  if (x.kind == K::Zero) return TailInfo::zero(x.log_from);
  if (y.kind == K::Zero) return TailInfo::zero(y.log_from);
  const double from = restrict_from(x.log_from, y.log_from, zero_end);
  const double coeff = x.coeff * y.coeff;
  const double expo = x.exponent + y.exponent;
  if (x.kind == K::ExactPower && y.kind == K::ExactPower)
    return TailInfo::exact(coeff, expo, from);
  return TailInfo::asym(coeff, expo, from);
}

}  // namespace

// ---------------------------------------------------------------------------
// LogVal arithmetic.

LogVal lv_mul(const LogVal& x, const LogVal& y) {
  if (x.sign == 0 || y.sign == 0) return LogVal::zero();
  return {x.lg + y.lg, x.sign * y.sign};
}

LogVal lv_add(const LogVal& x, const LogVal& y) {
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const double m = std::max(x.lg, y.lg);
  if (m == -kInf) return LogVal::zero();
  const double acc = x.sign * std::exp(x.lg - m) + y.sign * std::exp(y.lg - m);
  if (acc == 0.0) return LogVal::zero();
  return {m + std::log(std::fabs(acc)), acc > 0 ? 1 : -1};
}

// ---------------------------------------------------------------------------
// TailInfo constructors (normalize vanishing coefficients to Zero).

TailInfo TailInfo::zero(double log_from) { return {Kind::Zero, 0.0, 0.0, log_from}; }

TailInfo TailInfo::exact(double coeff, double exponent, double log_from) {
  if (coeff == 0.0) return zero(log_from);
  if (!std::isfinite(coeff))
    throw ProfileDomainError("tail coefficient overflowed");
  return {Kind::ExactPower, coeff, exponent, log_from};
}

TailInfo TailInfo::asym(double coeff, double exponent, double log_from) {
  if (coeff == 0.0) return zero(log_from);
  if (!std::isfinite(coeff))
    throw ProfileDomainError("tail coefficient overflowed");
  return {Kind::Asymptotic, coeff, exponent, log_from};
}

// ---------------------------------------------------------------------------
// Evaluation in t-space (literal composition).

double Profile::eval(double t) const {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ProfileDomainError("profile evaluated outside (0, oo)");
  switch (kind) {
    case NodeKind::Power:
      return std::pow(t, par0);
    case NodeKind::Constant:
      return par0;
    case NodeKind::Cutoff:
      return cutoff_value(t);
    case NodeKind::OneMinusCutoff:
      return 1.0 - cutoff_value(t);
    case NodeKind::LogBump: {
      const double u = (std::log(t) - par0) / par1;
      if (std::fabs(u) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    case NodeKind::PowerWindow:
      return (t >= par1 && t < par2) ? std::pow(t, par0) : 0.0;
    case NodeKind::Sum: {
      double acc = 0.0;
      for (const auto& k : kids) acc += k->eval(t);
      return acc;
    }
    case NodeKind::Product: {
      double acc = 1.0;
      for (const auto& k : kids) acc *= k->eval(t);
      return acc;
    }
    case NodeKind::Scale:
      return kids[0]->eval(par0 * t);
    case NodeKind::Kelvin:
      return kids[0]->eval(1.0 / t);
    case NodeKind::PowerTransform: {
      const double v = std::max(kids[0]->eval(t), 0.0);
      return std::pow(v, par0);
    }
  }
  throw ProfileDomainError("unknown node kind");
}

double Profile::deriv(double t) const {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ProfileDomainError("profile differentiated outside (0, oo)");
  switch (kind) {
    case NodeKind::Power:
      return par0 == 0.0 ? 0.0 : par0 * std::pow(t, par0 - 1.0);
    case NodeKind::Constant:
      return 0.0;
    case NodeKind::Cutoff:
      return cutoff_deriv(t);
    case NodeKind::OneMinusCutoff:
      return -cutoff_deriv(t);
    case NodeKind::LogBump: {
      const double u = (std::log(t) - par0) / par1;
      if (std::fabs(u) >= 1.0 || u == 0.0) return 0.0;
      const double w = 1.0 - u * u;
      const double g = std::exp(1.0 - 1.0 / w);
      return g * (-2.0 * u / (w * w)) / (par1 * t);
    }
    case NodeKind::PowerWindow:
      if (!(t >= par1 && t < par2) || par0 == 0.0) return 0.0;
      return par0 * std::pow(t, par0 - 1.0);
    case NodeKind::Sum: {
      double acc = 0.0;
      for (const auto& k : kids) acc += k->deriv(t);
      return acc;
    }
    case NodeKind::Product: {
      const size_t n = kids.size();
      std::vector<double> vals(n);
      for (size_t i = 0; i < n; ++i) vals[i] = kids[i]->eval(t);
      double acc = 0.0;
      for (size_t i = 0; i < n; ++i) {
        double term = kids[i]->deriv(t);
        for (size_t j = 0; j < n; ++j)
          if (j != i) term *= vals[j];
        acc += term;
      }
      return acc;
    }
    case NodeKind::Scale:
      return par0 * kids[0]->deriv(par0 * t);
    case NodeKind::Kelvin:
      return -kids[0]->deriv(1.0 / t) / (t * t);
    case NodeKind::PowerTransform: {
      const double v = std::max(kids[0]->eval(t), 0.0);
      return par0 * std::pow(v, par0 - 1.0) * kids[0]->deriv(t);
    }
  }
  throw ProfileDomainError("unknown node kind");
}

// ---------------------------------------------------------------------------
// Evaluation in log-space: s = ln t, result as sign * exp(lg).

LogVal Profile::eval_ls(double s) const {
  switch (kind) {
    case NodeKind::Power:
      return {par0 * s, 1};
    case NodeKind::Constant:
      return LogVal::from(par0);
    case NodeKind::Cutoff:
      if (s <= kLogHalf) return {0.0, 1};
      if (s >= 0.0) return LogVal::zero();
      return LogVal::from(cutoff_value(std::exp(s)));
    case NodeKind::OneMinusCutoff:
      if (s <= kLogHalf) return LogVal::zero();
      if (s >= 0.0) return {0.0, 1};
      return LogVal::from(1.0 - cutoff_value(std::exp(s)));
    case NodeKind::LogBump: {
      const double u = (s - par0) / par1;
      if (std::fabs(u) >= 1.0) return LogVal::zero();
      return {1.0 - 1.0 / (1.0 - u * u), 1};
    }
    case NodeKind::PowerWindow: {
      const double llo = std::log(par1);
      const double lhi = std::log(par2);
      if (!(s >= llo && s < lhi)) return LogVal::zero();
      return {par0 * s, 1};
    }
    case NodeKind::Sum: {
      LogVal acc = LogVal::zero();
      for (const auto& k : kids) acc = lv_add(acc, k->eval_ls(s));
      return acc;
    }
    case NodeKind::Product: {
      LogVal acc = {0.0, 1};
      for (const auto& k : kids) {
        acc = lv_mul(acc, k->eval_ls(s));
        if (acc.sign == 0) return acc;
      }
      return acc;
    }
    case NodeKind::Scale:
      return kids[0]->eval_ls(s + std::log(par0));
    case NodeKind::Kelvin:
      return kids[0]->eval_ls(-s);
    case NodeKind::PowerTransform: {
      LogVal v = kids[0]->eval_ls(s);
      if (v.sign <= 0) return LogVal::zero();
      return {par0 * v.lg, 1};
    }
  }
  throw ProfileDomainError("unknown node kind");
}

LogVal Profile::deriv_ls(double s) const {
  switch (kind) {
    case NodeKind::Power:
      if (par0 == 0.0) return LogVal::zero();
      return {std::log(std::fabs(par0)) + (par0 - 1.0) * s, par0 > 0 ? 1 : -1};
    case NodeKind::Constant:
      return LogVal::zero();
    case NodeKind::Cutoff:
      if (s <= kLogHalf || s >= 0.0) return LogVal::zero();
      return LogVal::from(cutoff_deriv(std::exp(s)));
    case NodeKind::OneMinusCutoff:
      if (s <= kLogHalf || s >= 0.0) return LogVal::zero();
      return LogVal::from(-cutoff_deriv(std::exp(s)));
    case NodeKind::LogBump: {
      const double u = (s - par0) / par1;
      if (std::fabs(u) >= 1.0 || u == 0.0) return LogVal::zero();
      const double lg = (1.0 - 1.0 / (1.0 - u * u)) + std::log(2.0 * std::fabs(u)) -
                        2.0 * std::log1p(-u * u) - std::log(par1) - s;
      return {lg, u > 0 ? -1 : 1};
    }
    case NodeKind::PowerWindow: {
      const double llo = std::log(par1);
      const double lhi = std::log(par2);
      if (!(s >= llo && s < lhi) || par0 == 0.0) return LogVal::zero();
      return {std::log(std::fabs(par0)) + (par0 - 1.0) * s, par0 > 0 ? 1 : -1};
    }
    case NodeKind::Sum: {
      LogVal acc = LogVal::zero();
      for (const auto& k : kids) acc = lv_add(acc, k->deriv_ls(s));
      return acc;
    }
    case NodeKind::Product: {
      const size_t n = kids.size();
      std::vector<LogVal> vals(n);
      for (size_t i = 0; i < n; ++i) vals[i] = kids[i]->eval_ls(s);
      LogVal acc = LogVal::zero();
      for (size_t i = 0; i < n; ++i) {
        LogVal term = kids[i]->deriv_ls(s);
        for (size_t j = 0; j < n && term.sign != 0; ++j)
          if (j != i) term = lv_mul(term, vals[j]);
        acc = lv_add(acc, term);
      }
      return acc;
    }
    case NodeKind::Scale: {
      LogVal d = kids[0]->deriv_ls(s + std::log(par0));
      if (d.sign == 0) return d;
      return {d.lg + std::log(par0), d.sign};
    }
    case NodeKind::Kelvin: {
      LogVal d = kids[0]->deriv_ls(-s);
      if (d.sign == 0) return d;
      return {d.lg - 2.0 * s, -d.sign};
    }
    case NodeKind::PowerTransform: {
      LogVal v = kids[0]->eval_ls(s);
      LogVal d = kids[0]->deriv_ls(s);
      if (d.sign == 0) return LogVal::zero();
      if (v.sign <= 0) {
        if (par0 == 1.0) return d;
        return LogVal::zero();
      }
      return {std::log(par0) + (par0 - 1.0) * v.lg + d.lg, d.sign};
    }
  }
  throw ProfileDomainError("unknown node kind");
}

// ---------------------------------------------------------------------------
// Tails.

TailInfo Profile::tail(bool zero_end, bool derivative) const {
  const double everywhere = zero_end ? kInf : -kInf;
  switch (kind) {
    case NodeKind::Power:
      if (!derivative) return TailInfo::exact(1.0, par0, everywhere);
      return par0 == 0.0 ? TailInfo::zero(everywhere)
                         : TailInfo::exact(par0, par0 - 1.0, everywhere);
    case NodeKind::Constant:
      if (derivative) return TailInfo::zero(everywhere);
      return TailInfo::exact(par0, 0.0, everywhere);
    case NodeKind::Cutoff:
      if (zero_end)
        return derivative ? TailInfo::zero(kLogHalf) : TailInfo::exact(1.0, 0.0, kLogHalf);
      return TailInfo::zero(0.0);
    case NodeKind::OneMinusCutoff:
      if (zero_end) return TailInfo::zero(kLogHalf);
      return derivative ? TailInfo::zero(0.0) : TailInfo::exact(1.0, 0.0, 0.0);
    case NodeKind::LogBump:
      return TailInfo::zero(zero_end ? par0 - par1 : par0 + par1);
    case NodeKind::PowerWindow: {
      const double llo = std::log(par1);
      const double lhi = std::log(par2);
      if (zero_end) {
        if (llo != -kInf) return TailInfo::zero(llo);
        if (!derivative) return TailInfo::exact(1.0, par0, lhi);
        return par0 == 0.0 ? TailInfo::zero(lhi) : TailInfo::exact(par0, par0 - 1.0, lhi);
      }
      if (lhi != kInf) return TailInfo::zero(lhi);
      if (!derivative) return TailInfo::exact(1.0, par0, llo);
      return par0 == 0.0 ? TailInfo::zero(llo) : TailInfo::exact(par0, par0 - 1.0, llo);
    }
    case NodeKind::Sum: {
      TailInfo acc = kids[0]->tail(zero_end, derivative);
      for (size_t i = 1; i < kids.size(); ++i)
        acc = tail_sum(acc, kids[i]->tail(zero_end, derivative), zero_end);
      return acc;
    }
    case NodeKind::Product: {
      if (!derivative) {
        TailInfo acc = kids[0]->tail(zero_end, false);
        for (size_t i = 1; i < kids.size(); ++i)
          acc = tail_prod(acc, kids[i]->tail(zero_end, false), zero_end);
        return acc;
      }
      // Product rule, assembled from the factors' own tails.
      const size_t n = kids.size();
      TailInfo acc = TailInfo::zero(everywhere);
      bool first = true;
      for (size_t i = 0; i < n; ++i) {
        TailInfo term = kids[i]->tail(zero_end, true);
        for (size_t j = 0; j < n; ++j)
          if (j != i) term = tail_prod(term, kids[j]->tail(zero_end, false), zero_end);
        acc = first ? term : tail_sum(acc, term, zero_end);
        first = false;
      }
      return acc;
    }
    case NodeKind::Scale: {
      TailInfo child = kids[0]->tail(zero_end, derivative);
      const double shift = std::log(par0);
      if (child.kind == TailInfo::Kind::Zero) return TailInfo::zero(child.log_from - shift);
      const double coeff =
          child.coeff * std::pow(par0, child.exponent + (derivative ? 1.0 : 0.0));
      TailInfo out = child.kind == TailInfo::Kind::ExactPower
                         ? TailInfo::exact(coeff, child.exponent, child.log_from - shift)
                         : TailInfo::asym(coeff, child.exponent, child.log_from - shift);
      return out;
    }
    case NodeKind::Kelvin: {
      TailInfo child = kids[0]->tail(!zero_end, derivative);
      if (child.kind == TailInfo::Kind::Zero) return TailInfo::zero(-child.log_from);
      double coeff = child.coeff;
      double expo = -child.exponent;
      if (derivative) {
        coeff = -coeff;
        expo -= 2.0;
      }
      return child.kind == TailInfo::Kind::ExactPower
                 ? TailInfo::exact(coeff, expo, -child.log_from)
                 : TailInfo::asym(coeff, expo, -child.log_from);
    }
    case NodeKind::PowerTransform: {
      const double sg = par0;
      TailInfo v = kids[0]->tail(zero_end, false);
      if (!derivative) {
        if (v.kind == TailInfo::Kind::Zero) return v;
        const double coeff = std::pow(v.coeff, sg);
        return v.kind == TailInfo::Kind::ExactPower
                   ? TailInfo::exact(coeff, v.exponent * sg, v.log_from)
                   : TailInfo::asym(coeff, v.exponent * sg, v.log_from);
      }
      if (v.kind == TailInfo::Kind::Zero) return v;
      TailInfo d = kids[0]->tail(zero_end, true);
      if (d.kind == TailInfo::Kind::Zero) return d;
      const double from = restrict_from(v.log_from, d.log_from, zero_end);
      const double coeff = sg * std::pow(v.coeff, sg - 1.0) * d.coeff;
      const double expo = v.exponent * (sg - 1.0) + d.exponent;
      const bool exact =
          v.kind == TailInfo::Kind::ExactPower && d.kind == TailInfo::Kind::ExactPower;
      return exact ? TailInfo::exact(coeff, expo, from) : TailInfo::asym(coeff, expo, from);
    }
  }
  throw ProfileDomainError("unknown node kind");
}

// ---------------------------------------------------------------------------
// Breakpoints.

void Profile::collect_log_breakpoints(std::vector<double>& out) const {
  switch (kind) {
    case NodeKind::Power:
    case NodeKind::Constant:
      return;
    case NodeKind::Cutoff:
    case NodeKind::OneMinusCutoff:
      out.push_back(kLogHalf);
      out.push_back(0.0);
      return;
    case NodeKind::LogBump:
      out.push_back(par0 - par1);
      out.push_back(par0 + par1);
      return;
    case NodeKind::PowerWindow:
      if (par1 > 0.0) out.push_back(std::log(par1));
      if (std::isfinite(par2)) out.push_back(std::log(par2));
      return;
    case NodeKind::Scale: {
      std::vector<double> inner;
      kids[0]->collect_log_breakpoints(inner);
      const double shift = std::log(par0);
      for (double q : inner) out.push_back(q - shift);
      return;
    }
    case NodeKind::Kelvin: {
      std::vector<double> inner;
      kids[0]->collect_log_breakpoints(inner);
      for (double q : inner) out.push_back(-q);
      return;
    }
    default:
      for (const auto& k : kids) k->collect_log_breakpoints(out);
      return;
  }
}

std::vector<double> Profile::log_breakpoints() const {
  std::vector<double> out;
  collect_log_breakpoints(out);
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  for (double q : out) {
    if (dedup.empty() || q - dedup.back() > 1e-12 * std::max(1.0, std::fabs(q)))
      dedup.push_back(q);
  }
  return dedup;
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out = log_breakpoints();
  for (double& q : out) q = std::exp(q);
  return out;
}

// ---------------------------------------------------------------------------
// Constructors.

ProfilePtr power(double exponent) {
  check_finite(exponent, "power exponent");
  return make_node(NodeKind::Power, exponent);
}

ProfilePtr constant(double value) {
  check_finite(value, "constant value");
  return make_node(NodeKind::Constant, value);
}

ProfilePtr cutoff() { return make_node(NodeKind::Cutoff); }

ProfilePtr one_minus_cutoff() { return make_node(NodeKind::OneMinusCutoff); }

ProfilePtr log_bump(double center, double width) {
  check_finite(center, "bump center");
  if (!(width > 0.0) || !std::isfinite(width))
    throw ProfileDomainError("bump width must be positive and finite");
  return make_node(NodeKind::LogBump, center, width);
}

ProfilePtr power_window(double exponent, double lo, double hi) {
  check_finite(exponent, "window exponent");
  if (!(lo >= 0.0) || !std::isfinite(lo))
    throw ProfileDomainError("window lower bound must be finite and >= 0");
  if (!(hi > lo)) throw ProfileDomainError("window upper bound must exceed lower bound");
  return make_node(NodeKind::PowerWindow, exponent, lo, hi);
}

namespace {
void check_kids(const std::vector<ProfilePtr>& kids, const char* what) {
  if (kids.empty()) throw ProfileDomainError(std::string(what) + " needs at least one term");
  for (const auto& k : kids)
    if (!k) throw ProfileDomainError(std::string(what) + " received a null profile");
}
}  // namespace

ProfilePtr sum(std::vector<ProfilePtr> kids) {
  check_kids(kids, "sum");
  if (kids.size() == 1) return kids[0];
  return make_node(NodeKind::Sum, 0, 0, 0, std::move(kids));
}

ProfilePtr product(std::vector<ProfilePtr> kids) {
  check_kids(kids, "product");
  if (kids.size() == 1) return kids[0];
  return make_node(NodeKind::Product, 0, 0, 0, std::move(kids));
}

ProfilePtr sum(ProfilePtr x, ProfilePtr y) { return sum(std::vector<ProfilePtr>{x, y}); }

ProfilePtr product(ProfilePtr x, ProfilePtr y) {
  return product(std::vector<ProfilePtr>{x, y});
}

ProfilePtr scale(double lambda, ProfilePtr f) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ProfileDomainError("scale factor must be positive and finite");
  if (!f) throw ProfileDomainError("scale received a null profile");
  return make_node(NodeKind::Scale, lambda, 0, 0, {std::move(f)});
}

ProfilePtr kelvin_image(ProfilePtr f) {
  if (!f) throw ProfileDomainError("inversion received a null profile");
  if (f->kind == NodeKind::Kelvin) return f->kids[0];
  return make_node(NodeKind::Kelvin, 0, 0, 0, {std::move(f)});
}

ProfilePtr power_transform(ProfilePtr f, double sigma) {
  if (!f) throw ProfileDomainError("power transform received a null profile");
  if (!(sigma >= 1.0) || !std::isfinite(sigma))
    throw ProfileDomainError("power transform exponent must be >= 1");
  require_nonneg_on_grid(f, "power transform");
  return make_node(NodeKind::PowerTransform, sigma, 0, 0, {std::move(f)});
}

// ---------------------------------------------------------------------------
// Families.

namespace {
double target_exponent(const EmbeddingParams& params) {
  validate(params);
  const Rat e = -(params.c + Rat(params.dim)) / params.r;
  return rat_to_double(e);
}
}  // namespace

ProfilePtr near_zero_counterexample(const EmbeddingParams& params) {
  return product(power(target_exponent(params)), cutoff());
}

ProfilePtr near_infinity_counterexample(const EmbeddingParams& params) {
  return product(power(target_exponent(params)), one_minus_cutoff());
}

ProfilePtr log_bump_family(double a, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ProfileDomainError("dilation rate must be positive and finite");
  return product(power(-a), log_bump(0.0, 1.0 / lambda));
}

// ---------------------------------------------------------------------------
// Separable functions.

double AngularFactor::mean_power(double s) const {
  double acc = 0.0;
  for (const auto& [w, v] : levels) acc += w * std::pow(v, s);
  return acc;
}

double AngularFactor::sup() const {
  double best = 0.0;
  for (const auto& [w, v] : levels)
    if (w > 0.0) best = std::max(best, v);
  return best;
}

AngularFactor AngularFactor::uniform(double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw ProfileDomainError("angular value must be finite and >= 0");
  return {{{1.0, v}}};
}

AngularFactor AngularFactor::two_level(double fraction, double v_inside, double v_outside) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw ProfileDomainError("cap fraction must lie in [0, 1]");
  if (!(v_inside >= 0.0) || !(v_outside >= 0.0))
    throw ProfileDomainError("angular values must be >= 0");
  return {{{fraction, v_inside}, {1.0 - fraction, v_outside}}};
}

ProfilePtr spherical_mean_power(const SeparableFunction& u, double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw ProfileDomainError("mean-power order must be positive and finite");
  require_nonneg_on_grid(u.radial, "spherical mean");
  const double m = u.angular.mean_power(s);
  return product(constant(std::pow(m, 1.0 / s)), u.radial);
}

// ---------------------------------------------------------------------------
// Validation helpers.

void require_nonneg_on_grid(const ProfilePtr& f, const char* context) {
  if (!f) throw ProfileDomainError(std::string(context) + " received a null profile");
  std::vector<double> grid;
  for (int i = 0; i <= 600; ++i) grid.push_back(-30.0 + 0.1 * i);
  for (double q : f->log_breakpoints()) {
    for (double off : {-1e-3, -1e-6, 0.0, 1e-6, 1e-3}) grid.push_back(q + off);
  }
  double max_lg = -kInf;
  std::vector<LogVal> vals;
  vals.reserve(grid.size());
  for (double s : grid) {
    LogVal v = f->eval_ls(s);
    vals.push_back(v);
    if (v.sign != 0) max_lg = std::max(max_lg, v.lg);
  }
  if (max_lg == -kInf) return;  // identically zero on the grid: nonnegative
  for (const LogVal& v : vals) {
    if (v.sign < 0 && v.lg > max_lg + std::log(1e-12))
      throw ProfileDomainError(std::string(context) +
                               " requires a nonnegative profile, but negative values were found");
  }
}

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Power: return "power";
    case NodeKind::Constant: return "constant";
    case NodeKind::Cutoff: return "cutoff";
    case NodeKind::OneMinusCutoff: return "one_minus_cutoff";
    case NodeKind::LogBump: return "log_bump";
    case NodeKind::PowerWindow: return "power_window";
    case NodeKind::Sum: return "sum";
    case NodeKind::Product: return "product";
    case NodeKind::Scale: return "scale";
    case NodeKind::Kelvin: return "kelvin";
    case NodeKind::PowerTransform: return "power_transform";
  }
  return "unknown";
}

}  // namespace sobolev
