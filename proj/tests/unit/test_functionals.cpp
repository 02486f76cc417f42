#include <doctest.h>

#include <cmath>
#include <vector>

#include "../support/oracles.hpp"
#include "epigauss/core/convex_function.hpp"
#include "epigauss/functionals/epigraph.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/spherical.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

using namespace epigauss;

namespace {

const QuadratureConfig kCfg{};

ConvexFunction abs1() { return PLConvexFunction({{{1.0}, 0.0}, {{-1.0}, 0.0}}); }
ConvexFunction cone(double a, double b) { return PLConvexFunction({{{a}, b}, {{-a}, b}}); }
ConvexFunction sep(std::vector<Plq> axes) { return SeparableFunction(std::move(axes)); }

PLConvexFunction polygon_indicator(std::size_t sides, double offset) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < sides; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(sides);
    hs.push_back({{std::cos(a), std::sin(a)}, offset});
  }
  return PLConvexFunction({{{0.0, 0.0}, 0.0}}, hs);
}

}  // namespace

TEST_CASE("gaussian epigraph volumes") {
  CHECK(std::abs(epigraph_volume(sep({Plq()}), kCfg) - 0.5) <= 1e-12);
  CHECK(std::abs(epigraph_volume(sep({Plq(), Plq()}), kCfg) - 0.5) <= 1e-12);
  const double want = 0.5 * (1.0 - 2.0 * oracle::tail(1.0));
  CHECK(std::abs(epigraph_volume(sep({Plq::indicator(-1.0, 1.0)}), kCfg) - want) <= 1e-8);
  const double raw = oracle::raw_epigraph_1d([](double x) { return std::abs(x) + 1.0; }, {0.0});
  CHECK(std::abs(epigraph_volume(cone(1.0, 1.0), kCfg) - raw) <= 1e-8);
}

TEST_CASE("weighted volumes") {
  const WeightPair unit_exp{WeightPair::Omega::unit, 1.0, WeightPair::Eta::exponential, -0.25};
  CHECK(weighted_epigraph_volume(abs1(), unit_exp, kCfg) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(weighted_epigraph_volume(sep({Plq::indicator(0.0, 1.0)}), unit_exp, kCfg) == doctest::Approx(1.0).epsilon(1e-9));
  const WeightPair gg{};
  for (const ConvexFunction& f : {abs1(), cone(2.0, -0.5), sep({Plq::quadratic(1.0, 0.3, -1.0)}),
                                  sep({Plq::indicator(-0.5, 2.0, 0.2)}), sep({Plq::quadratic(2.0, 0.0, 0.0), Plq()})})
    CHECK(std::abs(weighted_epigraph_volume(f, gg, kCfg) - epigraph_volume(f, kCfg)) <= 1e-12);
  // Lebesgue weight with a function outside 𝓛 cannot have a finite volume.
  CHECK_THROWS_AS(weighted_epigraph_volume(sep({Plq()}), unit_exp, kCfg), Error);
}

TEST_CASE("moment measures") {
  const MomentMeasureEstimate m = moment_measure(abs1(), kCfg);
  REQUIRE(m.kind == MomentMeasureEstimate::Kind::atomic);
  REQUIRE(m.atoms.size() == 2);
  const double want = std::sqrt(kPi) / (2.0 * kPi);
  CHECK(std::abs(m.atoms[0].mass - m.atoms[1].mass) <= 1e-14);
  CHECK(std::abs(m.total_mass - want) <= 1e-12);
  CHECK(std::abs(m.atoms[0].location[0]) == 1.0);

  const double c = 0.7;
  const MomentMeasureEstimate flat = moment_measure(PLConvexFunction({{{0.0}, c}}), kCfg);
  REQUIRE(flat.atoms.size() == 1);
  CHECK(flat.atoms[0].location[0] == 0.0);
  CHECK(std::abs(flat.atoms[0].mass - std::exp(-0.5 * c * c) / std::sqrt(2.0 * kPi)) <= 1e-12);

  const std::vector<double> parts = piece_masses(std::get<PLConvexFunction>(abs1()), kCfg);
  CHECK(parts.back() == doctest::Approx(parts[0] + parts[1]));
  CHECK(std::abs(parts.back() - total_moment_mass(abs1(), kCfg)) <= 1e-10);

  const MomentMeasureEstimate h = moment_measure(sep({Plq::quadratic(1.0, 0.0, 0.0)}), kCfg);
  CHECK(h.kind == MomentMeasureEstimate::Kind::histogram);
  double sum = 0.0;
  for (double v : h.bins->mass) sum += v;
  CHECK(sum == doctest::Approx(h.total_mass).epsilon(1e-9));
}

TEST_CASE("total moment mass") {
  CHECK(std::abs(total_moment_mass(sep({Plq()}), kCfg) - 1.0 / std::sqrt(2.0 * kPi)) <= 1e-12);
  CHECK(total_moment_mass(sep({Plq::indicator(0.3, 0.3)}), kCfg) == 0.0);
  CHECK(std::abs(total_moment_mass(abs1(), kCfg) - std::sqrt(kPi) / (2.0 * kPi)) <= 1e-12);
}

TEST_CASE("spherical measures") {
  const SphericalMeasureEstimate none = spherical_measure(abs1(), kCfg);
  CHECK(none.full_domain);
  CHECK(none.total_mass == 0.0);

  const SphericalMeasureEstimate disk = spherical_measure(polygon_indicator(256, std::cos(kPi / 256.0)), kCfg);
  CHECK(std::abs(disk.total_mass - 0.5 * std::exp(-0.5)) <= 1e-3);

  const SphericalMeasureEstimate sq = spherical_measure(polygon_indicator(4, 1.0), kCfg);
  REQUIRE(sq.atoms.size() == 4);
  for (const SphericalAtom& a : sq.atoms) CHECK(a.mass == doctest::Approx(0.25 * sq.total_mass).epsilon(1e-12));
}

TEST_CASE("gaussian volumes of bodies") {
  CHECK(std::abs(gaussian_body_volume(-1.0, 1.0) - (1.0 - 2.0 * oracle::tail(1.0))) <= 1e-14);
  CHECK(std::abs(gaussian_body_volume(BoxDomain::cube(2, 8.0)) - 1.0) <= 1e-10);
  const double side = 1.0 - 2.0 * oracle::tail(1.0);
  CHECK(std::abs(gaussian_body_volume(BoxDomain::cube(2, 1.0)) - side * side) <= 1e-14);
  CHECK(std::abs(gaussian_body_volume(square_polygon(1.0), kCfg) - side * side) <= 1e-9);
}

TEST_CASE("finiteness audit") {
  for (const ConvexFunction& f : {abs1(), cone(0.5, -2.0), sep({Plq::quadratic(1.0, 0.0, 1.0)}),
                                  sep({Plq::indicator(-1.0, 1.0)}), sep({Plq::quadratic(1.0, 0.5, -0.5), Plq::quadratic(2.0, 0.0, 0.0)})}) {
    const FinitenessAudit a = finiteness_audit(f, 2.0, kCfg);
    CHECK(a.finite_nonnegative());
    CHECK(a.within_bound());
  }
}
