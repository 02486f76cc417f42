#include "epigauss/solver/monge_ampere.hpp"

#include <cmath>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {

MongeAmpereReport monge_ampere_residual(const GridFunction& phi, const std::function<double(std::span<const double>)>& g,
                                        double tau) {
  const std::size_t n = phi.dim();
  if (n > 2) throw Error(ErrorKind::unsupported_dimension, "Monge-Ampere residuals support n in {1,2}");
  const double c = gauss_constant(n + 1);
  std::vector<ExtReal> out(phi.size(), ExtReal::infinity());
  double worst = 0.0;
  std::size_t excluded = 0;

  for (std::size_t lin = 0; lin < phi.size(); ++lin) {
    const auto idx = phi.unravel(lin);
    bool interior = true;
    for (std::size_t k = 0; k < n; ++k)
      if (idx[k] == 0 || idx[k] + 1 == phi.shape()[k]) interior = false;
    if (!interior) continue;

    // f(i + a, j + b) for offsets in {-1, 0, 1}^n
    bool finite = true;
    auto at = [&](int a, int b) {
      auto j = idx;
      j[0] = static_cast<std::size_t>(static_cast<long>(j[0]) + a);
      if (n == 2) j[1] = static_cast<std::size_t>(static_cast<long>(j[1]) + b);
      const ExtReal v = phi.at(j);
      if (v.is_infinite()) finite = false;
      return v.value();
    };
    const double f0 = at(0, 0);
    Vec grad(n);
    double det = 0.0;
    const double h0 = phi.spacing(0);
    if (n == 1) {
      const double fp = at(1, 0), fm = at(-1, 0);
      grad[0] = (fp - fm) / (2.0 * h0);
      det = (fp - 2.0 * f0 + fm) / (h0 * h0);
    } else {
      const double h1 = phi.spacing(1);
      const double fpx = at(1, 0), fmx = at(-1, 0), fpy = at(0, 1), fmy = at(0, -1);
      const double fpp = at(1, 1), fpm = at(1, -1), fmp = at(-1, 1), fmm = at(-1, -1);
      grad[0] = (fpx - fmx) / (2.0 * h0);
      grad[1] = (fpy - fmy) / (2.0 * h1);
      const double fxx = (fpx - 2.0 * f0 + fmx) / (h0 * h0);
      const double fyy = (fpy - 2.0 * f0 + fmy) / (h1 * h1);
      const double fxy = (fpp - fpm - fmp + fmm) / (4.0 * h0 * h1);
      det = fxx * fyy - fxy * fxy;
    }
    if (!finite) {
      ++excluded;
      continue;
    }
    const Vec y = phi.node(idx);
    double r2 = 0.0;
    for (double v : y) r2 += v * v;
    const double rhs = tau * c * std::exp(-0.5 * (f0 * f0 + r2));
    const double r = std::abs(g(grad) * det - rhs);
    out[lin] = r;
    worst = std::max(worst, r);
  }
  return {GridFunction(phi.domain(), phi.shape(), std::move(out)), worst, excluded};
}

}  // namespace epigauss
