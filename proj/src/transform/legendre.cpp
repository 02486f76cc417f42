#include "epigauss/transform/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/parallel.hpp"

namespace epigauss {
namespace {

constexpr double kInf = Plq::kInf;

bool same_piece(const AffinePiece& p, const AffinePiece& q, double tol) {
  double d = std::abs(p.intercept - q.intercept);
  double s = std::abs(p.intercept);
  for (std::size_t k = 0; k < p.slope.size(); ++k) {
    d += std::abs(p.slope[k] - q.slope[k]);
    s += std::abs(p.slope[k]);
  }
  return d <= tol * (1.0 + s);
}

void push_unique(std::vector<AffinePiece>& pieces, AffinePiece a, double tol) {
  for (const AffinePiece& o : pieces)
    if (same_piece(o, a, tol)) return;
  pieces.push_back(std::move(a));
}

PLConvexFunction plq_to_pl(const Plq& p) {
  std::vector<AffinePiece> pieces;
  for (const QuadPiece& q : p.pieces()) {
    if (q.a != 0.0) throw Error(ErrorKind::invalid_argument, "profile is not piecewise linear");
    push_unique(pieces, {{q.b}, q.c}, 0.0);
  }
  std::vector<Halfspace> dom;
  if (std::isfinite(p.hi())) dom.push_back({{1.0}, p.hi()});
  if (std::isfinite(p.lo())) dom.push_back({{-1.0}, -p.lo()});
  return PLConvexFunction(std::move(pieces), std::move(dom));
}

// Bounded polygonal domain: the supremum of ⟨x, y⟩ − f(x) is attained at a
// vertex of the linearity complex, so f* is the max over those points.
std::optional<PLConvexFunction> bounded_conjugate_2d(const PLConvexFunction& f) {
  if (!f.bounded_domain()) return std::nullopt;
  const Polygon poly = f.polygon_domain(1e9);
  if (poly.empty()) throw Error(ErrorKind::degenerate_input, "PL domain has empty interior");
  std::vector<Point2> cand(poly.vertices.begin(), poly.vertices.end());
  const auto& ps = f.pieces();
  auto gap = [&](std::size_t i, std::size_t j, const Point2& x) {
    return (ps[i].slope[0] - ps[j].slope[0]) * x[0] + (ps[i].slope[1] - ps[j].slope[1]) * x[1] + ps[i].intercept -
           ps[j].intercept;
  };
  const std::size_t m = poly.vertices.size();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (std::size_t e = 0; e < m; ++e) {
        const Point2& p = poly.vertices[e];
        const Point2& q = poly.vertices[(e + 1) % m];
        const double d0 = gap(i, j, p), d1 = gap(i, j, q);
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
          const double s = d0 / (d0 - d1);
          cand.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
        }
      }
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (std::size_t k = j + 1; k < ps.size(); ++k) {
        const double a11 = ps[i].slope[0] - ps[j].slope[0], a12 = ps[i].slope[1] - ps[j].slope[1];
        const double a21 = ps[i].slope[0] - ps[k].slope[0], a22 = ps[i].slope[1] - ps[k].slope[1];
        const double r1 = ps[j].intercept - ps[i].intercept, r2 = ps[k].intercept - ps[i].intercept;
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-14) continue;
        const Point2 x{(r1 * a22 - r2 * a12) / det, (a11 * r2 - a21 * r1) / det};
        if (f.in_domain(x, 1e-12)) cand.push_back(x);
      }
  std::vector<AffinePiece> pieces;
  for (const Point2& c : cand) push_unique(pieces, {{c[0], c[1]}, -f.max_affine(c)}, 1e-13);
  return PLConvexFunction(std::move(pieces));
}

// min Σλ_i(−b_i) subject to Σλ_i a_i = y over the simplex, enumerating
// supports of at most three pieces (n ≤ 2).
double lp_conjugate(const PLConvexFunction& f, std::span<const double> y) {
  const auto& ps = f.pieces();
  const std::size_t n = f.dim();
  double best = kInf;
  for (const AffinePiece& p : ps) {
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) d += std::abs(p.slope[k] - y[k]);
    if (d <= 1e-12 * (1.0 + norm(y))) best = std::min(best, -p.intercept);
  }
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double dk = ps[j].slope[k] - ps[i].slope[k];
        num += (y[k] - ps[i].slope[k]) * dk;
        den += dk * dk;
      }
      if (den == 0.0) continue;
      const double s = num / den;
      if (s < -1e-12 || s > 1.0 + 1e-12) continue;
      double off = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        off += std::abs(ps[i].slope[k] + s * (ps[j].slope[k] - ps[i].slope[k]) - y[k]);
      if (off > 1e-12 * (1.0 + std::sqrt(den))) continue;
      best = std::min(best, -(1.0 - s) * ps[i].intercept - s * ps[j].intercept);
    }
  if (n == 2)
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        for (std::size_t k = j + 1; k < ps.size(); ++k) {
          const double e1x = ps[j].slope[0] - ps[i].slope[0], e1y = ps[j].slope[1] - ps[i].slope[1];
          const double e2x = ps[k].slope[0] - ps[i].slope[0], e2y = ps[k].slope[1] - ps[i].slope[1];
          const double det = e1x * e2y - e1y * e2x;
          if (std::abs(det) < 1e-14) continue;
          const double rx = y[0] - ps[i].slope[0], ry = y[1] - ps[i].slope[1];
          const double l1 = (rx * e2y - ry * e2x) / det, l2 = (e1x * ry - e1y * rx) / det;
          if (l1 < -1e-12 || l2 < -1e-12 || l1 + l2 > 1.0 + 1e-12) continue;
          best = std::min(best, -(1.0 - l1 - l2) * ps[i].intercept - l1 * ps[j].intercept - l2 * ps[k].intercept);
        }
  return best;
}

std::vector<double> axis_coordinates(const BoxDomain& box, std::size_t m, std::size_t k) {
  std::vector<double> c(m);
  const double h = (box.hi()[k] - box.lo()[k]) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) c[i] = box.lo()[k] + h * static_cast<double>(i);
  c.back() = box.hi()[k];
  return c;
}

}  // namespace

std::vector<double> llt_1d(std::span<const double> x, std::span<const ExtReal> v, std::span<const double> y) {
  if (x.size() != v.size()) throw Error(ErrorKind::dimension_mismatch, "abscissae and values differ in length");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i - 1] < x[i]))
      throw Error(ErrorKind::unsorted_input, "abscissae must increase strictly (index " + std::to_string(i) + ")");
  for (std::size_t j = 1; j < y.size(); ++j)
    if (y[j] < y[j - 1]) throw Error(ErrorKind::unsorted_input, "query slopes must be sorted (index " + std::to_string(j) + ")");

  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i].is_infinite()) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cr = (x[b] - x[a]) * (v[i].value() - v[a].value()) - (v[b].value() - v[a].value()) * (x[i] - x[a]);
      if (cr > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  if (hull.empty()) throw Error(ErrorKind::all_infinite, "every sample value is +inf");

  std::vector<double> out(y.size());
  std::size_t j = 0;
  for (std::size_t q = 0; q < y.size(); ++q) {
    while (j + 1 < hull.size()) {
      const std::size_t a = hull[j], b = hull[j + 1];
      if (x[b] * y[q] - v[b].value() < x[a] * y[q] - v[a].value()) break;
      ++j;
    }
    out[q] = x[hull[j]] * y[q] - v[hull[j]].value();
  }
  return out;
}

QueryGrid default_slope_grid(const GridFunction& f) {
  const std::size_t n = f.dim();
  Vec lo(n, kInf), hi(n, -kInf);
  for (std::size_t lin = 0; lin < f.size(); ++lin) {
    const auto idx = f.unravel(lin);
    if (f.at(idx).is_infinite()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (idx[k] + 1 >= f.shape()[k]) continue;
      auto nb = idx;
      ++nb[k];
      if (f.at(nb).is_infinite()) continue;
      const double s = (f.at(nb).value() - f.at(idx).value()) / f.spacing(k);
      lo[k] = std::min(lo[k], s);
      hi[k] = std::max(hi[k], s);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(hi[k] - lo[k] > 1e-12)) {
      const double c = std::isfinite(lo[k]) ? 0.5 * (lo[k] + hi[k]) : 0.0;
      lo[k] = c - 1.0;
      hi[k] = c + 1.0;
    } else {
      const double pad = 0.1 * (hi[k] - lo[k]);
      lo[k] -= pad;
      hi[k] += pad;
    }
  }
  return {BoxDomain(lo, hi), f.shape()};
}

GridFunction legendre_nd(const GridFunction& f, const QueryGrid& q) {
  const std::size_t n = f.dim();
  if (n > 2) throw Error(ErrorKind::unsupported_dimension, "grid conjugation supports n in {1,2}, got " + std::to_string(n));
  if (q.domain.dim() != n || q.shape.size() != n) throw Error(ErrorKind::dimension_mismatch, "query grid dimension differs");
  for (std::size_t m : q.shape)
    if (m < 2) throw Error(ErrorKind::invalid_argument, "query grid needs at least two nodes per axis");

  if (n == 1) {
    const auto x = axis_coordinates(f.domain(), f.shape()[0], 0);
    const auto y = axis_coordinates(q.domain, q.shape[0], 0);
    const auto vals = llt_1d(x, f.values(), y);
    return GridFunction(q.domain, q.shape, std::vector<ExtReal>(vals.begin(), vals.end()));
  }

  const auto x0 = axis_coordinates(f.domain(), f.shape()[0], 0), x1 = axis_coordinates(f.domain(), f.shape()[1], 1);
  const auto y0 = axis_coordinates(q.domain, q.shape[0], 0), y1 = axis_coordinates(q.domain, q.shape[1], 1);
  const std::size_t m0 = x0.size(), m1 = x1.size(), q0 = y0.size(), q1 = y1.size();
  // g(x0, y1) = sup_{x1} x1 y1 − f(x0, x1); rows with no finite entry stay +∞
  // in the negated table and drop out of the second sweep.
  std::vector<ExtReal> neg(m0 * q1, ExtReal::infinity());
  parallel_for(m0, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
      std::span<const ExtReal> row(f.values().data() + i * m1, m1);
      if (std::all_of(row.begin(), row.end(), [](ExtReal v) { return v.is_infinite(); })) continue;
      const auto g = llt_1d(x1, row, y1);
      for (std::size_t j = 0; j < q1; ++j) neg[i * q1 + j] = -g[j];
    }
  });
  std::vector<ExtReal> out(q0 * q1);
  parallel_for(q1, [&](std::size_t c0, std::size_t c1) {
    std::vector<ExtReal> col(m0);
    for (std::size_t j = c0; j < c1; ++j) {
      for (std::size_t i = 0; i < m0; ++i) col[i] = neg[i * q1 + j];
      const auto h = llt_1d(x0, col, y0);
      for (std::size_t i = 0; i < q0; ++i) out[i * q1 + j] = h[i];
    }
  });
  return GridFunction(q.domain, q.shape, std::move(out));
}

PLConvexFunction conjugate_pl(const std::vector<Sample>& samples) {
  if (samples.empty()) throw Error(ErrorKind::invalid_argument, "conjugate of an empty sample set");
  std::vector<AffinePiece> pieces;
  for (const Sample& s : samples) push_unique(pieces, {s.x, -s.v}, 0.0);
  return PLConvexFunction(std::move(pieces));
}

std::optional<PLConvexFunction> conjugate_of(const PLConvexFunction& f) {
  if (f.dim() == 1) return plq_to_pl(f.to_plq().conjugate());
  if (f.dim() != 2) return std::nullopt;
  if (!f.full_domain()) return bounded_conjugate_2d(f);
  std::vector<Sample> pts;
  for (const AffinePiece& p : f.pieces()) pts.push_back({p.slope, -p.intercept});
  try {
    return lower_convex_envelope(pts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::degenerate_input) return std::nullopt;
    throw;
  }
}

ConjugateEvaluator::ConjugateEvaluator(const ConvexFunction& f, std::optional<QueryGrid> grid)
    : clamped_(std::make_shared<std::atomic<std::size_t>>(0)) {
  if (const auto* s = std::get_if<SeparableFunction>(&f)) {
    separable_ = s->conjugate();
  } else if (const auto* p = std::get_if<PLConvexFunction>(&f)) {
    pl_ = conjugate_of(*p);
    if (!pl_) {
      if (p->dim() != 2 || !p->full_domain())
        throw Error(ErrorKind::unsupported_dimension, "no exact conjugate for this PL function");
      pl_source_ = *p;
    }
  } else {
    const auto& g = std::get<GridFunction>(f);
    table_ = legendre_nd(g, grid ? *grid : default_slope_grid(g));
  }
}

ExtReal ConjugateEvaluator::operator()(std::span<const double> y) const {
  if (separable_) return separable_->eval(y);
  if (pl_) return pl_->eval(y);
  if (pl_source_) {
    const double v = lp_conjugate(*pl_source_, y);
    return std::isfinite(v) ? ExtReal(v) : ExtReal::infinity();
  }
  const BoxDomain& box = table_->domain();
  Vec c(y.begin(), y.end());
  bool clamped = false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double v = std::clamp(c[k], box.lo()[k], box.hi()[k]);
    clamped = clamped || v != c[k];
    c[k] = v;
  }
  if (clamped) clamped_->fetch_add(1, std::memory_order_relaxed);
  return table_->eval(c);
}

}  // namespace epigauss
