#include "epigauss/variation/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/numerics/minimize.hpp"

namespace epigauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string point_text(std::span<const double> y) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t k = 0; k < y.size(); ++k) os << (k ? ", " : "") << y[k];
  os << ')';
  return os.str();
}

}  // namespace

QueryGrid default_condition_grid(const ConvexFunction& phi) {
  const std::size_t n = dimension(phi);
  QuadratureConfig coarse;
  coarse.points_per_axis = 129;
  const BoxDomain r = gradient_range(phi, coarse, 0.05);
  Vec lo = r.lo(), hi = r.hi();
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = std::min(lo[k], -1.0);
    hi[k] = std::max(hi[k], 1.0);
  }
  return {BoxDomain(lo, hi), std::vector<std::size_t>(n, n == 1 ? 257 : 65)};
}

ConditionCertificate check_condition(const ConvexFunction& phi, const ConvexFunction& psi, std::optional<QueryGrid> grid) {
  ConditionCertificate cert;
  if (!grid) grid = default_condition_grid(phi);
  QueryGrid fine = *grid;
  for (auto& m : fine.shape) m = 2 * m - 1;

  const ExtReal psi_o = evaluate(psi, Vec(dimension(psi), 0.0));
  if (psi_o.is_infinite()) {
    cert.inf_psi_star = -kInf;
    cert.worst_violation = kInf;
    cert.reason = "o is not in dom psi, so inf psi* = -inf";
    return cert;
  }

  const ConjugateEvaluator fs(phi, fine), gs(psi, fine);
  const GridFunction probe(fine.domain, fine.shape, std::vector<ExtReal>([&] {
                             std::size_t t = 1;
                             for (auto m : fine.shape) t *= m;
                             return t;
                           }(), 0.0));
  std::vector<double> a, b;  // φ*, ψ* where φ* is finite
  cert.inf_psi_star = kInf;
  for (std::size_t lin = 0; lin < probe.size(); ++lin) {
    const Vec y = probe.node(probe.unravel(lin));
    const ExtReal f = fs(y), g = gs(y);
    if (g.is_finite()) cert.inf_psi_star = std::min(cert.inf_psi_star, g.value());
    if (f.is_infinite()) continue;
    if (g.is_infinite()) {
      cert.worst_violation = kInf;
      cert.reason = "psi* = +inf at " + point_text(y) + " where phi* is finite";
      return cert;
    }
    a.push_back(f.value());
    b.push_back(g.value());
  }
  if (a.empty()) {
    cert.worst_violation = kInf;
    cert.reason = "phi* is +inf on the whole query grid";
    return cert;
  }

  auto beta = [&](double alpha) {
    double m = -kInf;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, b[i] - alpha * a[i]);
    return m;
  };
  std::vector<double> alphas{1.0, 2.0};
  for (int k = 0; k <= 60; ++k) alphas.push_back(std::pow(10.0, -3.0 + 0.1 * k));
  std::sort(alphas.begin(), alphas.end());
  std::size_t best = 0;
  double best_beta = beta(alphas[0]);
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    const double v = beta(alphas[i]);
    if (v < best_beta - 1e-12 * (1.0 + std::abs(best_beta))) {
      best_beta = v;
      best = i;
    }
  }
  double alpha = alphas[best];
  const double lo = std::log(alphas[best > 0 ? best - 1 : 0]), hi = std::log(alphas[std::min(best + 1, alphas.size() - 1)]);
  if (hi > lo) {
    const ScalarMinimum m = minimize_convex([&](double l) { return beta(std::exp(l)); }, lo, hi, std::log(alpha));
    if (m.value < best_beta - 1e-12 * (1.0 + std::abs(best_beta))) {
      alpha = std::exp(m.argmin);
      best_beta = m.value;
    }
  }
  cert.alpha = alpha;
  cert.beta = beta(alpha);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, b[i] - alpha * a[i] - cert.beta);
  cert.worst_violation = worst;
  cert.satisfied = std::isfinite(cert.beta) && worst <= 1e-9;
  if (!cert.satisfied) cert.reason = "no finite (alpha, beta) pair passes";
  return cert;
}

}  // namespace epigauss
