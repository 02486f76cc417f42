#include "epigauss/functionals/epigraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/functionals/pointwise.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Cube wide enough that a tail decaying like H(growth·|x|) is negligible,
// keeping the configured node spacing where that stays affordable.
QuadratureConfig widened(const QuadratureConfig& cfg, std::size_t n, double radius) {
  if (radius <= cfg.truncation_radius) return cfg;
  QuadratureConfig out = cfg;
  const double h = cfg.spacing();
  out.truncation_radius = radius;
  auto pts = static_cast<std::size_t>(std::ceil(2.0 * radius / h)) + 1;
  const std::size_t cap = n == 1 ? 65537 : (n == 2 ? 2049 : cfg.points_per_axis);
  pts = std::clamp(pts, cfg.points_per_axis, cap);
  if (out.rule == QuadratureRule::simpson && pts % 2 == 0) ++pts;
  out.points_per_axis = pts;
  return out;
}

}  // namespace

double epigraph_volume(const ConvexFunction& f, const QuadratureConfig& cfg) {
  const std::size_t n = dimension(f);
  if (n > 3) throw Error(ErrorKind::unsupported_dimension, "epigraph volume supports n <= 3");
  const auto sums = integrate_function(f, cfg, 1, [](const PointData& d, std::span<double> acc) {
    acc[0] += d.weight * std::exp(-0.5 * squared_norm(d.x)) * gauss_tail(d.value);
  });
  return std::clamp(std::pow(2.0 * kPi, -0.5 * static_cast<double>(n)) * sums[0], 0.0, 1.0);
}

double weighted_epigraph_volume(const ConvexFunction& f, const WeightPair& w, const QuadratureConfig& cfg) {
  const std::size_t n = dimension(f);
  if (n > 3) throw Error(ErrorKind::unsupported_dimension, "epigraph volume supports n <= 3");
  w.validate(n);
  QuadratureConfig use = cfg;
  if (w.omega != WeightPair::Omega::gaussian) {
    const double growth = growth_rate(f);
    if (!(growth > 1e-12))
      throw Error(ErrorKind::divergent_tail, "non-Gaussian omega needs a function of class L (growth " +
                                                 std::to_string(growth) + ")");
    if (std::isfinite(growth)) {
      // H_η(t) falls below 1e-16 near t = 37 (exponential) or t = 9
      // (Gaussian); the α-concave tail is algebraic and gets a wider cube.
      const double t = w.eta == WeightPair::Eta::exponential ? 37.0 : (w.eta == WeightPair::Eta::gaussian ? 9.0 : 400.0);
      use = widened(cfg, n, cfg.truncation_radius + t / growth);
    }
  }
  const double skip = 1e-6 * use.spacing();
  const auto sums = integrate_function(f, use, 2, [&](const PointData& d, std::span<double> acc) {
    if (!w.tail_defined(d.value)) {
      acc[1] += 1.0;
      return;
    }
    if (w.omega == WeightPair::Omega::power && w.q < static_cast<double>(n) && squared_norm(d.x) < skip * skip) return;
    acc[0] += d.weight * w.omega_at(d.x) * w.tail(d.value);
  });
  if (sums[1] > 0.0) throw Error(ErrorKind::divergent_tail, "alpha-concave tail diverges where phi <= 1/alpha");
  return sums[0];
}

double gaussian_body_volume(double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorKind::invalid_argument, "interval needs lo <= hi");
  if (hi <= 0.0) return gauss_tail(-hi) - gauss_tail(-lo);
  return gauss_tail(lo) - gauss_tail(hi);
}

double gaussian_body_volume(const BoxDomain& box) {
  double v = 1.0;
  for (std::size_t k = 0; k < box.dim(); ++k) v *= gaussian_body_volume(box.lo()[k], box.hi()[k]);
  return v;
}

double gaussian_body_volume(const Polygon& body, const QuadratureConfig& cfg) {
  if (body.empty()) return 0.0;
  Region reg;
  reg.dim = 2;
  const Point2 c = body.centroid();
  for (std::size_t i = 0; i < body.vertices.size(); ++i)
    reg.triangles.push_back({c, body.vertices[i], body.vertices[(i + 1) % body.vertices.size()]});
  const double s = integrate_region(reg, cfg, [](std::span<const double> x) { return std::exp(-0.5 * squared_norm(x)); });
  return s / (2.0 * kPi);
}

bool FinitenessAudit::finite_nonnegative() const {
  for (double v : {moment, gradient_term, value_term})
    if (!std::isfinite(v) || v < 0.0) return false;
  return true;
}

bool FinitenessAudit::within_bound() const { return value_term <= std::exp(-0.5); }

FinitenessAudit finiteness_audit(const ConvexFunction& f, double p, const QuadratureConfig& cfg) {
  const std::size_t n = dimension(f);
  const auto sums = integrate_function(f, cfg, 3, [&](const PointData& d, std::span<double> acc) {
    const double r2 = squared_norm(d.x);
    const double gx = std::exp(-0.5 * r2);
    const double gphi = std::exp(-0.5 * d.value * d.value);
    acc[0] += d.weight * std::pow(std::sqrt(r2), p) * gx * gauss_tail(d.value);
    acc[1] += d.weight * norm(d.grad) * gphi * gx;
    acc[2] += d.weight * std::abs(d.value) * gx * gphi;
  });
  FinitenessAudit a;
  a.moment = sums[0];
  a.gradient_term = sums[1];
  a.value_term = std::pow(2.0 * kPi, -0.5 * static_cast<double>(n)) * sums[2];
  return a;
}

}  // namespace epigauss
