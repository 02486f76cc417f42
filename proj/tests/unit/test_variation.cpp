#include <doctest.h>

#include <cmath>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"
#include "epigauss/transform/legendre.hpp"
#include "epigauss/variation/condition.hpp"
#include "epigauss/variation/first_variation.hpp"

using namespace epigauss;

namespace {

const QuadratureConfig kCfg{};

ConvexFunction sep(std::vector<Plq> axes) { return SeparableFunction(std::move(axes)); }
ConvexFunction quad_plus_one() { return sep({Plq::quadratic(1.0, 0.0, 1.0)}); }
ConvexFunction origin_indicator() { return sep({Plq::indicator(0.0, 0.0)}); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("growth-condition certificates") {
  const ConvexFunction phi = quad_plus_one();
  const ConditionCertificate self = check_condition(phi, phi);
  CHECK(self.satisfied);
  CHECK(self.alpha == doctest::Approx(1.0));
  CHECK(std::abs(self.beta) <= 1e-12);

  const ConvexFunction psi = shift(right_scale(phi, 2.0), -5.0);
  const ConditionCertificate scaled = check_condition(phi, psi);
  CHECK(scaled.satisfied);
  CHECK(scaled.alpha == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(scaled.beta == doctest::Approx(5.0).epsilon(1e-6));

  // ψ* is +∞ off [-1, 1], so the comparison is made on that slope box.
  const ConvexFunction cone = PLConvexFunction({{{1.0}, 1.0}, {{-1.0}, 1.0}});
  const QueryGrid inside{BoxDomain::cube(1, 1.0), {257}};
  const ConditionCertificate mixed = check_condition(phi, cone, inside);
  REQUIRE(mixed.satisfied);
  const ConjugateEvaluator ps(cone), fs(phi);
  for (int k = 0; k <= 200; ++k) {
    const double y = -1.0 + 0.01 * k;
    CHECK(ps(std::span(&y, 1)).value() <= mixed.alpha * fs(std::span(&y, 1)).value() + mixed.beta + 1e-12);
  }
  CHECK_FALSE(check_condition(phi, cone).satisfied);
}

TEST_CASE("numeric first variation") {
  const VariationReport unit = delta_gamma_numeric(quad_plus_one(), origin_indicator(), default_t_schedule(), kCfg);
  for (double q : unit.raw_quotients) CHECK(std::abs(q) <= 1e-14);

  const VariationReport self = delta_gamma_numeric(quad_plus_one(), quad_plus_one(), default_t_schedule(), kCfg);
  CHECK(rel(*self.richardson_value, delta_gamma_self(quad_plus_one(), kCfg)) <= 1e-3);

  const ConvexFunction ind = sep({Plq::indicator(-1.0, 1.0)});
  const VariationReport iv = delta_gamma_numeric(ind, ind, default_t_schedule(), kCfg);
  CHECK(rel(*iv.richardson_value, std::exp(-0.5) / std::sqrt(2.0 * kPi)) <= 1e-6);
}

TEST_CASE("closed-form first variation") {
  const ConvexFunction phi = quad_plus_one();
  const VariationReport closed = delta_gamma_closed(phi, phi, kCfg);
  CHECK(closed.boundary_term == 0.0);
  CHECK(rel(*closed.closed_form_value, delta_gamma_self_boundary(phi, kCfg)) <= 1e-6);

  const PLConvexFunction sq({{{0.0, 0.0}, 0.0}}, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}});
  const VariationReport sc = delta_gamma_closed(sq, sq, kCfg);
  // ½ (2π)^{-1} · 4 edges · h = 1 · e^{-1/2} ∫_{-1}^{1} e^{-s²/2} ds
  const double edge = std::sqrt(2.0 * kPi) * (1.0 - 2.0 * gauss_tail(1.0));
  CHECK(rel(*sc.closed_form_value, 0.5 / (2.0 * kPi) * 4.0 * std::exp(-0.5) * edge) <= 1e-9);
  const VariationReport sn = delta_gamma_numeric(sq, sq, default_t_schedule(), kCfg);
  CHECK(rel(*sn.richardson_value, *sc.closed_form_value) <= 1e-3);

  const ConvexFunction cone = PLConvexFunction({{{1.0}, 1.0}, {{-1.0}, 1.0}});
  try {
    (void)delta_gamma_closed(phi, cone, kCfg);
    FAIL("expected condition_violated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::condition_violated);
  }
  CHECK(delta_gamma_closed(phi, cone, kCfg, {true, std::nullopt}).closed_form_value.has_value());
}

TEST_CASE("self-variation formulas") {
  CHECK(std::abs(delta_gamma_self(sep({Plq()}), kCfg)) <= 1e-12);
  CHECK(std::abs(delta_gamma_self(sep({Plq(), Plq()}), kCfg)) <= 1e-12);
  const ConvexFunction cone = PLConvexFunction({{{1.0}, 1.0}, {{-1.0}, 1.0}});
  CHECK(rel(delta_gamma_self(cone, kCfg), delta_gamma_self_boundary(cone, kCfg)) <= 1e-6);
  const ConvexFunction ind = sep({Plq::indicator(-1.0, 1.0)});
  const VariationReport num = delta_gamma_numeric(ind, ind, default_t_schedule(), kCfg);
  CHECK(rel(delta_gamma_self_boundary(ind, kCfg), *num.richardson_value) <= 1e-6);
}

TEST_CASE("scaling identity") {
  const ConvexFunction phi = quad_plus_one();
  CHECK(scaling_identity_residual(phi, phi, 1.0, 0.0, kCfg) == 0.0);
  CHECK(scaling_identity_residual(phi, phi, 2.0, 1.0, kCfg) <= 1e-6);
}

TEST_CASE("pointwise derivative of the inf-convolution") {
  std::vector<Vec> xs;
  for (double x = -2.0; x <= 2.0; x += 0.25) xs.push_back({x});
  const ConvexFunction q = sep({Plq::quadratic(1.0, 0.0, 0.0)});
  const BermanReport unit = berman_derivative_residual(q, origin_indicator(), xs, default_t_schedule());
  CHECK(unit.residual <= 1e-14);
  const BermanReport qq = berman_derivative_residual(q, q, xs, default_t_schedule());
  CHECK(qq.used == xs.size());
  CHECK(qq.residual <= 1e-4);

  const ConvexFunction a = PLConvexFunction({{{2.0}, 0.0}, {{-1.0}, 0.5}, {{0.5}, 0.1}});
  const ConvexFunction b = PLConvexFunction({{{1.0}, -0.3}, {{-0.5}, 0.2}});
  REQUIRE(check_condition(b, a).satisfied);
  CHECK(berman_derivative_residual(b, a, xs, default_t_schedule()).residual <= 1e-3);
}
