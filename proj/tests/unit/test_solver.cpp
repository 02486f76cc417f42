#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "../support/oracles.hpp"
#include "epigauss/core/measure.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/numerics/gauss_tail.hpp"
#include "epigauss/solver/minkowski.hpp"
#include "epigauss/solver/monge_ampere.hpp"

using namespace epigauss;

namespace {

ValidatedMeasure pair1() { return validate_measure({1, {{1.0}, {-1.0}}, {1.0, 1.0}}); }
ValidatedMeasure cross() { return validate_measure({2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}}); }

}  // namespace

TEST_CASE("conjugate of the heights") {
  const PLConvexFunction f = phi_star_of({0.7}, pair1());
  for (double y : {-2.0, 0.0, 0.4}) CHECK(f.eval(std::span(&y, 1)).value() == doctest::Approx(std::abs(y) - 0.7));
  const PLConvexFunction h = phi_star_of({0.0, 0.0}, cross());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const PLConvexFunction g = phi_star_of({0.5, 0.5}, cross());
  for (int k = 0; k < 100; ++k) {
    const Vec y{u(rng), u(rng)};
    CHECK(h.eval(y).value() == doctest::Approx(std::max(std::abs(y[0]), std::abs(y[1]))));
    CHECK(g.eval(y).value() == doctest::Approx(std::max(std::abs(y[0]), std::abs(y[1])) - 0.5));
  }
}

TEST_CASE("constraint values") {
  const QuadratureConfig cfg = solver_quadrature(1);
  const double raw = oracle::raw_epigraph_1d([](double y) { return std::abs(y); }, {0.0});
  CHECK(std::abs(constraint_value({0.0}, pair1(), cfg) - raw) <= 1e-9);
  CHECK(std::abs(constraint_value({50.0}, pair1(), cfg) - 1.0) <= 1e-6);
  CHECK(constraint_value({0.0, 0.0}, cross(), solver_quadrature(2)) < 0.5);
}

TEST_CASE("projection onto the constraint") {
  const QuadratureConfig cfg = solver_quadrature(1);
  const Projection p = project_shift({0.0}, pair1(), cfg);
  CHECK(std::abs(p.v[0] - oracle::single_pair_height()) <= 1e-8);
  CHECK(std::abs(p.constraint - 0.5) <= 1e-10);
  const Projection again = project_shift(p.v, pair1(), cfg);
  CHECK(std::abs(again.shift) <= 1e-10);
  const Projection other = project_shift({3.0}, pair1(), cfg);
  CHECK(std::abs(other.constraint - 0.5) <= 1e-10);
}

TEST_CASE("cell masses") {
  const std::vector<double> one = constraint_gradient({0.3}, pair1(), solver_quadrature(1));
  CHECK(std::abs(one[0] - total_moment_mass(phi_star_of({0.3}, pair1()), solver_quadrature(1))) <= 1e-12);
  const ValidatedMeasure two = validate_measure({1, {{1.0}, {-1.0}, {2.0}, {-2.0}}, {1, 1, 1, 1}});
  const std::vector<double> m = constraint_gradient({0.0, 10.0}, two, solver_quadrature(1));
  CHECK(m[1] == 0.0);
  const std::vector<double> c = constraint_gradient({0.4, 0.4}, cross(), solver_quadrature(2));
  CHECK(std::abs(c[0] - c[1]) <= 1e-10);
}

TEST_CASE("solver on symmetric measures") {
  const SolverResult r = solve(pair1(), default_solver_config(1));
  CHECK(r.converged);
  CHECK(r.residual <= 1e-10);
  CHECK(std::abs(r.v[0] - oracle::single_pair_height()) <= 1e-8);
  CHECK(verify_solution(r, pair1(), solver_quadrature(1).refined(2)).tv_distance <= 1e-6);

  const SolverResult c = solve(cross(), default_solver_config(2));
  CHECK(c.converged);
  CHECK(std::abs(c.v[0] - c.v[1]) <= 1e-10);
  CHECK(verify_solution(c, cross(), solver_quadrature(2).refined(2)).tv_distance <= 1e-6);
}

TEST_CASE("solver on two pairs and the truncated negative control") {
  const ValidatedMeasure mu = validate_measure({1, {{1.0}, {-1.0}, {2.0}, {-2.0}}, {1.0, 1.0, 0.2, 0.2}});
  SolverConfig cfg = default_solver_config(1);
  const SolverResult r = solve(mu, cfg);
  CHECK(r.converged);
  CHECK(r.residual <= 1e-3);
  const auto masses = constraint_gradient(r.v, mu, cfg.quadrature);
  double total = 0.0;
  for (double m : masses) total += m;
  CHECK(std::abs(total - total_moment_mass(r.phi, cfg.quadrature)) <= 1e-10);
  CHECK(verify_solution(r, mu, cfg.quadrature.refined(2)).tv_distance <= 2.0 * cfg.residual_tol);

  cfg.max_iterations = 1;
  cfg.v_init = std::vector<double>{0.0, 3.0};
  const SolverResult early = solve(mu, cfg);
  CHECK_FALSE(early.converged);
  CHECK(verify_solution(early, mu, cfg.quadrature.refined(2)).tv_distance > cfg.residual_tol);
}

TEST_CASE("monge-ampere residuals") {
  const double c2 = 1.0 / (2.0 * kPi);
  auto residual_1d = [&](std::size_t m) {
    const GridFunction phi = GridFunction::sample(BoxDomain::cube(1, 2.0), {m}, [](std::span<const double> y) {
      return 0.5 * y[0] * y[0];
    });
    return monge_ampere_residual(
               phi, [&](std::span<const double> x) { return c2 * std::exp(-0.5 * std::pow(0.5 * x[0] * x[0], 2) - 0.5 * x[0] * x[0]); },
               1.0)
        .max_residual;
  };
  CHECK(residual_1d(81) <= 1e-12);

  const GridFunction linear = GridFunction::sample(BoxDomain::cube(2, 1.0), {21, 21}, [](std::span<const double> y) {
    return 0.3 * y[0] - y[1];
  });
  CHECK(monge_ampere_residual(linear, [](std::span<const double>) { return 5.0; }, 0.0).max_residual <= 1e-12);
}
