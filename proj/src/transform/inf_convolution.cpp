#include "epigauss/transform/inf_convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

constexpr std::size_t kMaxExactPieces = 400;

QueryGrid shared_slope_grid(const GridFunction& phi, const GridFunction& psi) {
  const QueryGrid a = default_slope_grid(phi), b = default_slope_grid(psi);
  const std::size_t n = phi.dim();
  Vec lo(n), hi(n);
  std::vector<std::size_t> shape(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = std::min(a.domain.lo()[k], b.domain.lo()[k]);
    hi[k] = std::max(a.domain.hi()[k], b.domain.hi()[k]);
    shape[k] = 2 * std::max(phi.shape()[k], psi.shape()[k]) - 1;
  }
  return {BoxDomain(lo, hi), shape};
}

}  // namespace

GridFunction inf_convolution(const GridFunction& phi, const GridFunction& psi, double t, std::optional<QueryGrid> output) {
  if (phi.dim() != psi.dim()) throw Error(ErrorKind::dimension_mismatch, "inf-convolution of functions of different dimension");
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "inf-convolution needs t > 0");
  const auto ephi = phi.finite_extent(), epsi = psi.finite_extent();
  if (!ephi || !epsi) throw Error(ErrorKind::all_infinite, "inf-convolution of a nowhere-finite grid");
  const std::size_t n = phi.dim();

  const QueryGrid slopes = shared_slope_grid(phi, psi);
  const GridFunction fs = legendre_nd(phi, slopes);
  const GridFunction gs = legendre_nd(psi, slopes);
  std::vector<ExtReal> sum(fs.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = fs.values()[i].value() + t * gs.values()[i].value();
  const GridFunction dual(slopes.domain, slopes.shape, std::move(sum));

  if (!output) {
    Vec lo(n), hi(n);
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = phi.domain().lo()[k] + t * psi.domain().lo()[k];
      hi[k] = phi.domain().hi()[k] + t * psi.domain().hi()[k];
    }
    output = QueryGrid{BoxDomain(lo, hi), phi.shape()};
  }
  GridFunction back = legendre_nd(dual, *output);

  std::vector<ExtReal> vals = back.values();
  for (std::size_t lin = 0; lin < vals.size(); ++lin) {
    const Vec x = back.node(back.unravel(lin));
    for (std::size_t k = 0; k < n; ++k) {
      const double lo = ephi->lo[k] + t * epsi->lo[k], hi = ephi->hi[k] + t * epsi->hi[k];
      const double tol = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
      if (x[k] < lo - tol || x[k] > hi + tol) {
        vals[lin] = ExtReal::infinity();
        break;
      }
    }
  }
  return GridFunction(back.domain(), back.shape(), std::move(vals));
}

PLConvexFunction pl_sum(const PLConvexFunction& f, const PLConvexFunction& g, double s) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::dimension_mismatch, "sum of PL functions of different dimension");
  std::vector<AffinePiece> pieces;
  pieces.reserve(f.pieces().size() * g.pieces().size());
  for (const AffinePiece& a : f.pieces())
    for (const AffinePiece& b : g.pieces()) {
      AffinePiece c{a.slope, a.intercept + s * b.intercept};
      for (std::size_t k = 0; k < c.slope.size(); ++k) c.slope[k] += s * b.slope[k];
      pieces.push_back(std::move(c));
    }
  auto key = [](const AffinePiece& p) {
    Vec k = p.slope;
    k.push_back(p.intercept);
    return k;
  };
  std::sort(pieces.begin(), pieces.end(), [&](const AffinePiece& p, const AffinePiece& q) { return key(p) < key(q); });
  pieces.erase(std::unique(pieces.begin(), pieces.end(),
                           [&](const AffinePiece& p, const AffinePiece& q) { return key(p) == key(q); }),
               pieces.end());
  std::vector<Halfspace> dom = f.domain();
  dom.insert(dom.end(), g.domain().begin(), g.domain().end());
  return PLConvexFunction(std::move(pieces), std::move(dom));
}

GridFunction to_grid(const ConvexFunction& f, const SamplingGrid& sampling) {
  if (const auto* g = std::get_if<GridFunction>(&f)) return *g;
  const std::size_t n = dimension(f);
  return GridFunction::sample(BoxDomain::cube(n, sampling.radius), std::vector<std::size_t>(n, sampling.points),
                              [&](std::span<const double> x) { return evaluate(f, x); });
}

ConvexFunction inf_convolution(const ConvexFunction& phi, const ConvexFunction& psi, double t, const SamplingGrid& sampling) {
  if (dimension(phi) != dimension(psi))
    throw Error(ErrorKind::dimension_mismatch, "inf-convolution of functions of different dimension");
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "inf-convolution needs t > 0");
  const auto sphi = as_separable(phi), spsi = as_separable(psi);
  if (sphi && spsi) return sphi->inf_convolution(*spsi, t);

  const auto* pphi = std::get_if<PLConvexFunction>(&phi);
  const auto* ppsi = std::get_if<PLConvexFunction>(&psi);
  if (pphi && ppsi && pphi->pieces().size() * ppsi->pieces().size() <= kMaxExactPieces) {
    const auto fs = conjugate_of(*pphi), gs = conjugate_of(*ppsi);
    if (fs && gs) {
      const PLConvexFunction sum = pl_sum(*fs, *gs, t);
      if (sum.pieces().size() <= kMaxExactPieces)
        if (auto back = conjugate_of(sum)) return *back;
    }
  }
  return inf_convolution(to_grid(phi, sampling), to_grid(psi, sampling), t);
}

}  // namespace epigauss
