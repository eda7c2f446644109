#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sobolev/errors.hpp"
#include "sobolev/profile.hpp"
#include "sobolev/quad.hpp"

using namespace sobolev;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_value(const QuadResult& got, double expect, double rel = 1e-10) {
  REQUIRE(got.status == QuadResult::Status::Converged);
  CHECK(std::fabs(got.value - expect) <=
        rel * std::max(1.0, std::fabs(expect)));
}

}  // namespace

TEST_CASE("window norms against hand integrals") {
  // Two abutting windows, first norm power, doubled angular factor: exact 4.
  const ProfilePtr two_piece =
      sum(power_window(0.0, 0.0, 1.0), power_window(-2.0, 1.0, kInf));
  check_value(weighted_lr_norm(two_piece, 0.0, 1.0, 1, 2.0, 1e-12), 4.0);

  check_value(weighted_lr_norm(power_window(0.0, 0.0, 1.0), 0.0, 1.0, 1, 1.0, 1e-12),
              1.0);
  // int_0^1 t^{2*1+1} dt = 1/4, square root -> 1/2.
  check_value(weighted_lr_norm(power_window(1.0, 0.0, 1.0), 1.0, 2.0, 1, 1.0, 1e-12),
              0.5);
  // int_1^oo t^{-6} dt = 1/5.
  check_value(weighted_lr_norm(power_window(-3.0, 1.0, kInf), 0.0, 2.0, 1, 1.0, 1e-12),
              1.0 / std::sqrt(5.0));
  // Logarithmic borderline handled as an interior piece: int_1^7 dt/t = ln 7.
  check_value(weighted_lr_norm(power_window(-1.0, 1.0, 7.0), 0.0, 1.0, 1, 1.0, 1e-12),
              std::log(7.0));
  // Interior window with weight: int_1^2 t^3 dt = 15/4, cube root.
  check_value(weighted_lr_norm(power_window(0.0, 1.0, 2.0), 2.0, 3.0, 2, 1.0, 1e-12),
              std::cbrt(15.0 / 4.0));
  // Window not reaching either end, fractional exponents.
  // int_{1/4}^4 t^{1/2 * 3 + 1/2} dt = int t^2 = (64 - 1/64)/3.
  check_value(weighted_lr_norm(power_window(0.5, 0.25, 4.0), 0.5, 3.0, 1, 1.0, 1e-12),
              std::cbrt((64.0 - 1.0 / 64.0) / 3.0));
}

TEST_CASE("composite profile norms against hand integrals") {
  // Rescaling: f(t) = (2t)^2 on [1/2, 1): int 4 t^2 dt = 7/6.
  check_value(weighted_lr_norm(scale(2.0, power_window(1.0, 1.0, 2.0)), 0.0, 2.0, 1,
                               1.0, 1e-12),
              std::sqrt(7.0 / 6.0));
  // Inversion image: f(t) = t^{-2} on (1/4, 1]: int_{1/4}^1 t^{-2} dt = 3.
  check_value(weighted_lr_norm(kelvin_image(power_window(2.0, 1.0, 4.0)), 0.0, 1.0, 1,
                               1.0, 1e-12),
              3.0);
  // Pointwise power: (t^2)^{3/2} = t^3 on (0,1): int = 1/4.
  check_value(weighted_lr_norm(power_transform(power_window(2.0, 0.0, 1.0), 1.5), 0.0,
                               1.0, 1, 1.0, 1e-12),
              0.25);
  // Product of overlapping windows: t^2 on [1, 2): int = 7/3.
  check_value(weighted_lr_norm(product(power_window(1.0, 0.0, 2.0),
                                       power_window(1.0, 1.0, 3.0)),
                               0.0, 1.0, 1, 1.0, 1e-12),
              7.0 / 3.0);
  // Sum with interior overlap on [1, 2): (t + t)^1 doubles the mass there.
  // int_0^1 t dt + int_1^2 2t dt = 1/2 + 3 = 7/2.
  check_value(weighted_lr_norm(sum(power_window(1.0, 0.0, 2.0),
                                   power_window(1.0, 1.0, 2.0)),
                               0.0, 1.0, 1, 1.0, 1e-12),
              3.5);
  // Dimension 3 with the full spherical factor: (4 pi int_0^1 t^2)^{1/2}.
  check_value(weighted_lr_norm(power_window(0.0, 0.0, 1.0), 0.0, 2.0, 3,
                               sphere_measure_factor(3), 1e-12),
              std::sqrt(4.0 * M_PI / 3.0));
}

TEST_CASE("gradient norms") {
  // d/dt t^2 = 2t on (0,1): int_0^1 4 t^2 dt = 4/3.
  check_value(weighted_grad_lr_norm(power_window(2.0, 0.0, 1.0), 0.0, 2.0, 1, 1.0,
                                    1e-12),
              2.0 / std::sqrt(3.0));
  // Scale chain rule: d/dt f(3t) = 3 f'(3t); f = t^2 window on (0,1).
  // derivative = 3 * 2 * (3t) = 18 t on (0, 1/3): int_0^{1/3} (18 t)^1 dt = 1.
  check_value(weighted_grad_lr_norm(scale(3.0, power_window(2.0, 0.0, 1.0)), 0.0, 1.0,
                                    1, 1.0, 1e-12),
              1.0);
  // The cutoff ramp integrates |f'| to exactly 1 (monotone drop from 1 to 0).
  check_value(weighted_grad_lr_norm(cutoff(), 0.0, 1.0, 1, 1.0, 1e-12), 1.0);
}

TEST_CASE("sup norms") {
  // Weight exactly cancels the power: sup is 1 everywhere on the line.
  check_value(weighted_sup_norm(power(-2.0), 2.0), 1.0, 1e-8);
  check_value(weighted_sup_norm(power_window(0.0, 0.0, 1.0), 0.0), 1.0, 1e-8);
  // sup of t * 1 over (0,1) approaches 1 at the right edge.
  check_value(weighted_sup_norm(power_window(0.0, 0.0, 1.0), 1.0), 1.0, 1e-6);
  check_value(weighted_sup_norm(log_bump(0.0, 1.0), 0.0), 1.0, 1e-6);
  // Interior peak of t * bump(ln t): maximize exp(s + 1 - 1/(1 - s^2)).
  {
    const QuadResult got = weighted_sup_norm(log_bump(0.0, 1.0), 1.0);
    REQUIRE(got.status == QuadResult::Status::Converged);
    double best = 0.0;
    for (double s = -0.999; s < 0.999; s += 1e-5)
      best = std::max(best, std::exp(s) * std::exp(1.0 - 1.0 / (1.0 - s * s)));
    CHECK(got.value == doctest::Approx(best).epsilon(1e-6));
  }
  // Unbounded weighted sup: t^{-1} with no weight blows up at zero.
  {
    const QuadResult got = weighted_sup_norm(power(-1.0), 0.0);
    REQUIRE(got.status == QuadResult::Status::Divergent);
    REQUIRE(got.divergence.has_value());
    CHECK(got.divergence->at_zero);
  }
}

TEST_CASE("divergence certificates") {
  {
    // Constant profile: infinite mass at both ends; certificate points at one.
    const QuadResult got = weighted_lr_norm(constant(1.0), 0.0, 1.0, 1, 1.0);
    REQUIRE(got.status == QuadResult::Status::Divergent);
    CHECK(got.divergence.has_value());
  }
  {
    const QuadResult got =
        weighted_lr_norm(power_window(-2.0, 0.0, 1.0), 0.0, 1.0, 1, 1.0);
    REQUIRE(got.status == QuadResult::Status::Divergent);
    REQUIRE(got.divergence.has_value());
    CHECK(got.divergence->at_zero);
    CHECK(got.divergence->local_exponent == doctest::Approx(-2.0));
  }
  {
    const QuadResult got =
        weighted_lr_norm(power_window(-1.0, 1.0, kInf), 0.0, 1.0, 1, 1.0);
    REQUIRE(got.status == QuadResult::Status::Divergent);
    REQUIRE(got.divergence.has_value());
    CHECK(!got.divergence->at_zero);
  }
  {
    // Borderline exponent exactly at the divergence threshold at zero.
    const QuadResult got =
        weighted_lr_norm(power_window(-1.0, 0.0, 1.0), 0.0, 1.0, 1, 1.0);
    REQUIRE(got.status == QuadResult::Status::Divergent);
    REQUIRE(got.divergence.has_value());
    CHECK(got.divergence->at_zero);
  }
}

TEST_CASE("zero profiles and zero factors") {
  check_value(weighted_lr_norm(constant(0.0), 0.0, 2.0, 1, 1.0), 0.0);
  check_value(weighted_lr_norm(log_bump(0.0, 1.0), 0.0, 2.0, 1, 0.0), 0.0);
  check_value(weighted_sup_norm(constant(0.0), 3.0), 0.0);
}

TEST_CASE("truncated norms") {
  // int_1^8 dt/t = ln 8.
  check_value(truncated_lr_norm(power(-1.0), 0.0, 1.0, 1, 1.0, 0.0, std::log(8.0),
                                1e-12),
              std::log(8.0));
  // Full-line truncation equals the plain norm.
  check_value(truncated_lr_norm(power_window(0.0, 0.0, 1.0), 0.0, 2.0, 1, 1.0, -kInf,
                                kInf, 1e-12),
              1.0);
  // Gradient flavor: |d/dt t^2| = 2t on [1, 2]: int_1^2 2t dt = 3.
  check_value(truncated_grad_lr_norm(power(2.0), 0.0, 1.0, 1, 1.0, 0.0, std::log(2.0),
                                     1e-12),
              3.0);
  CHECK_THROWS_AS(truncated_lr_norm(power(1.0), 0.0, 1.0, 1, 1.0, 1.0, 1.0),
                  PreconditionViolated);
  CHECK_THROWS_AS(truncated_lr_norm(power(1.0), 0.0, 1.0, 1, 1.0, 2.0, -2.0),
                  PreconditionViolated);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(weighted_lr_norm(nullptr, 0.0, 1.0, 1, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(weighted_lr_norm(power(1.0), 0.0, 0.0, 1, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(weighted_lr_norm(power(1.0), 0.0, -2.0, 1, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(weighted_lr_norm(power(1.0), 0.0, 1.0, 0, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(weighted_lr_norm(power(1.0), 0.0, 1.0, 1, -1.0), PreconditionViolated);
  CHECK_THROWS_AS(weighted_lr_norm(power(1.0), 0.0, 1.0, 1, 1.0, 0.0),
                  PreconditionViolated);
}

TEST_CASE("membership norm bundle") {
  const EmbeddingParams params{3, Rat(2), Rat(0), Rat(0), Rat(2), Rat(2)};
  const ProfilePtr u = log_bump(0.0, 1.0);
  const NormTriple t = membership_norms(u, params, 1e-10);
  REQUIRE(t.sup_norm.status == QuadResult::Status::Converged);
  REQUIRE(t.grad_norm.status == QuadResult::Status::Converged);
  REQUIRE(t.target_norm.status == QuadResult::Status::Converged);

  const double af = sphere_measure_factor(3);
  check_value(t.target_norm,
              weighted_lr_norm(u, 0.0, 2.0, 3, af, 1e-10).value, 1e-8);
  check_value(t.grad_norm, weighted_grad_lr_norm(u, 0.0, 2.0, 3, af, 1e-10).value,
              1e-8);
  check_value(t.sup_norm, weighted_sup_norm(u, 2.0).value, 1e-8);

  // Separable variant: sup picks up the angular sup, integrals the mean power.
  const SeparableFunction su{u, AngularFactor::two_level(0.5, 2.0, 1.0)};
  const NormTriple st = membership_norms(su, params, 1e-10);
  CHECK(st.sup_norm.value == doctest::Approx(2.0 * t.sup_norm.value).epsilon(1e-8));
  const double mean_sq = std::sqrt(0.5 * 4.0 + 0.5 * 1.0);
  CHECK(st.target_norm.value ==
        doctest::Approx(mean_sq * t.target_norm.value).epsilon(1e-8));
}

TEST_CASE("scaling exponent triple") {
  const ScalingExponents se =
      scaling_exponents(EmbeddingParams{3, Rat(2), Rat(0), Rat(0), Rat(2), Rat(2)});
  CHECK(se.target == Rat(-3, 2));
  CHECK(se.sup == Rat(-2));
  CHECK(se.grad == Rat(-1, 2));
}

TEST_CASE("sphere measure factors") {
  CHECK(sphere_measure_factor(1) == doctest::Approx(2.0));
  CHECK(sphere_measure_factor(2) == doctest::Approx(2.0 * M_PI));
  CHECK(sphere_measure_factor(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_measure_factor(4) == doctest::Approx(2.0 * M_PI * M_PI));
}
