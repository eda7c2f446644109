#pragma once

#include <stdexcept>
#include <string>

namespace sobolev {

// Parameter tuple rejected before any computation. `field` names the offender.
struct InvalidParams : std::invalid_argument {
  std::string field;
  InvalidParams(std::string field_, const std::string& reason)
      : std::invalid_argument(field_ + ": " + reason), field(std::move(field_)) {}
};

// An operation was called outside its stated domain (e.g. refute on a tuple
// where the embedding holds, or a star-quantity check without p < dim).
struct PreconditionViolated : std::logic_error {
  using std::logic_error::logic_error;
};

// Profile-construction domain errors (negative base under a power transform,
// nonpositive scale factor, malformed windows...).
struct ProfileDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A norm required to be finite came out Divergent. `component` is one of
// "sup", "gradient", "target", "rhs", ...
struct NormDivergent : std::runtime_error {
  std::string component;
  explicit NormDivergent(std::string component_)
      : std::runtime_error("norm divergent: " + component_),
        component(std::move(component_)) {}
};

// Ratio requested against a profile whose relevant norms vanish.
struct DegenerateProfile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A family-based operation received (or retained, after divergence filtering)
// no profiles at all.
struct EmptyFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A witness sweep ran out of allotted steps before reaching its growth
// target. Always surfaced, never converted into a silent pass.
struct BudgetExhausted : std::runtime_error {
  double growth_reached;
  BudgetExhausted(const std::string& what, double growth_reached_)
      : std::runtime_error(what), growth_reached(growth_reached_) {}
};

}  // namespace sobolev
