#include "epigauss/core/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {

PLConvexFunction::PLConvexFunction(std::vector<AffinePiece> pieces, std::vector<Halfspace> domain)
    : pieces_(std::move(pieces)), domain_(std::move(domain)) {
  if (pieces_.empty()) throw Error(ErrorKind::invalid_argument, "a PL function needs at least one piece");
  dim_ = pieces_.front().slope.size();
  if (dim_ == 0) throw Error(ErrorKind::invalid_argument, "piece slopes must be nonempty");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].slope.size() != dim_)
      throw Error(ErrorKind::dimension_mismatch, "piece " + std::to_string(i) + " has the wrong slope length");
    for (std::size_t j = 0; j < i; ++j)
      if (pieces_[j].slope == pieces_[i].slope && pieces_[j].intercept == pieces_[i].intercept)
        throw Error(ErrorKind::invalid_argument,
                    "pieces " + std::to_string(j) + " and " + std::to_string(i) + " are identical");
  }
  for (std::size_t k = 0; k < domain_.size(); ++k) {
    if (domain_[k].normal.size() != dim_)
      throw Error(ErrorKind::dimension_mismatch, "halfspace " + std::to_string(k) + " has the wrong normal length");
    if (norm(domain_[k].normal) == 0.0)
      throw Error(ErrorKind::invalid_argument, "halfspace " + std::to_string(k) + " has a zero normal");
  }
  if (dim_ == 1) {
    const Interval iv = interval_domain();
    if (iv.lo > iv.hi) throw Error(ErrorKind::invalid_argument, "empty domain");
  }
}

bool PLConvexFunction::in_domain(std::span<const double> x, double tol) const {
  for (const Halfspace& h : domain_)
    if (dot(h.normal, x) > h.offset + tol * (1.0 + std::abs(h.offset))) return false;
  return true;
}

double PLConvexFunction::max_affine(std::span<const double> x, std::size_t* which) const {
  double best = -Plq::kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const AffinePiece& p = pieces_[i];
    double v = p.intercept;
    for (std::size_t k = 0; k < dim_; ++k) v += p.slope[k] * x[k];
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  if (which) *which = arg;
  return best;
}

void PLConvexFunction::active_pieces(std::span<const double> x, double rel_tol, std::vector<std::size_t>& out) const {
  out.clear();
  const double best = max_affine(x);
  const double tol = rel_tol * std::max(1.0, std::abs(best));
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const AffinePiece& p = pieces_[i];
    double v = p.intercept;
    for (std::size_t k = 0; k < dim_; ++k) v += p.slope[k] * x[k];
    if (v >= best - tol) out.push_back(i);
  }
}

ExtReal PLConvexFunction::eval(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from function");
  if (!in_domain(x)) return ExtReal::infinity();
  return max_affine(x);
}

Vec PLConvexFunction::gradient(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from function");
  if (!in_domain(x)) throw Error(ErrorKind::not_differentiable_here, "gradient outside the domain");
  std::size_t i = 0;
  max_affine(x, &i);
  return pieces_[i].slope;
}

Interval PLConvexFunction::interval_domain() const {
  if (dim_ != 1) throw Error(ErrorKind::unsupported_dimension, "interval domain needs n = 1");
  Interval iv{-Plq::kInf, Plq::kInf};
  for (const Halfspace& h : domain_) {
    const double bound = h.offset / h.normal[0];
    if (h.normal[0] > 0.0) iv.hi = std::min(iv.hi, bound);
    else iv.lo = std::max(iv.lo, bound);
  }
  return iv;
}

Polygon PLConvexFunction::polygon_domain(double radius) const {
  if (dim_ != 2) throw Error(ErrorKind::unsupported_dimension, "polygon domain needs n = 2");
  Polygon p = square_polygon(radius);
  for (std::size_t k = 0; k < domain_.size() && !p.vertices.empty(); ++k)
    p = clip(p, {domain_[k].normal[0], domain_[k].normal[1]}, domain_[k].offset, static_cast<int>(k));
  // Clipping a large square loses digits; vertices between two halfspace
  // edges are recomputed as the intersection of their lines.
  const std::size_t m = p.vertices.size();
  for (std::size_t i = 0; i < m && m >= 3; ++i) {
    const int ta = p.tags[(i + m - 1) % m], tb = p.tags[i];
    if (ta < 0 || tb < 0 || ta == tb) continue;
    const Halfspace& a = domain_[static_cast<std::size_t>(ta)];
    const Halfspace& b = domain_[static_cast<std::size_t>(tb)];
    const double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    if (std::abs(det) < 1e-12 * norm(a.normal) * norm(b.normal)) continue;
    p.vertices[i] = {(a.offset * b.normal[1] - b.offset * a.normal[1]) / det,
                     (a.normal[0] * b.offset - b.normal[0] * a.offset) / det};
  }
  return p;
}

bool PLConvexFunction::bounded_domain() const {
  if (dim_ == 1) {
    const Interval iv = interval_domain();
    return std::isfinite(iv.lo) && std::isfinite(iv.hi);
  }
  if (dim_ == 2) {
    const Polygon p = polygon_domain(1e9);
    return std::none_of(p.tags.begin(), p.tags.end(), [](int t) { return t < 0; });
  }
  return false;
}

Plq PLConvexFunction::to_plq() const {
  if (dim_ != 1) throw Error(ErrorKind::unsupported_dimension, "1-D profile needs n = 1");
  std::vector<double> s, b;
  for (const AffinePiece& p : pieces_) {
    s.push_back(p.slope[0]);
    b.push_back(p.intercept);
  }
  const Interval iv = interval_domain();
  return Plq::max_affine(s, b, iv.lo, iv.hi);
}

PLConvexFunction PLConvexFunction::right_scaled(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "right scaling needs t > 0");
  std::vector<AffinePiece> ps = pieces_;
  for (AffinePiece& p : ps) p.intercept *= t;
  std::vector<Halfspace> hs = domain_;
  for (Halfspace& h : hs) h.offset *= t;
  return PLConvexFunction(std::move(ps), std::move(hs));
}

PLConvexFunction PLConvexFunction::shifted(double k) const {
  std::vector<AffinePiece> ps = pieces_;
  for (AffinePiece& p : ps) p.intercept += k;
  return PLConvexFunction(std::move(ps), domain_);
}

bool PLConvexFunction::in_class_L() const {
  if (!full_domain() && bounded_domain()) return true;
  if (dim_ == 1) {
    double lo = Plq::kInf, hi = -Plq::kInf;
    for (const AffinePiece& p : pieces_) {
      lo = std::min(lo, p.slope[0]);
      hi = std::max(hi, p.slope[0]);
    }
    const Interval iv = interval_domain();
    const bool right_ok = std::isfinite(iv.hi) || hi > 0.0;
    const bool left_ok = std::isfinite(iv.lo) || lo < 0.0;
    return right_ok && left_ok;
  }
  if (dim_ == 2 && full_domain()) {
    std::vector<Point2> pts;
    for (const AffinePiece& p : pieces_) pts.push_back({p.slope[0], p.slope[1]});
    const auto hull = convex_hull(pts);
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point2& a = hull[i];
      const Point2& b = hull[(i + 1) % hull.size()];
      // origin strictly left of every counter-clockwise edge
      const double c = (b[0] - a[0]) * (0.0 - a[1]) - (b[1] - a[1]) * (0.0 - a[0]);
      if (!(c > 1e-14 * (1.0 + std::hypot(b[0] - a[0], b[1] - a[1])))) return false;
    }
    return true;
  }
  return recession_minimum() > 1e-12;
}

double PLConvexFunction::recession_minimum() const {
  auto rec = [&](std::span<const double> u) {
    double m = -Plq::kInf;
    for (const AffinePiece& p : pieces_) m = std::max(m, dot(p.slope, u));
    return m;
  };
  double best = Plq::kInf;
  if (dim_ == 1) {
    const double up[1] = {1.0}, down[1] = {-1.0};
    return std::min(rec(up), rec(down));
  }
  if (dim_ == 2) {
    for (int k = 0; k < 3600; ++k) {
      const double th = 2.0 * kPi * k / 3600.0;
      const double u[2] = {std::cos(th), std::sin(th)};
      best = std::min(best, rec(u));
    }
    return best;
  }
  // Fibonacci sphere in 3-D.
  const int m = 20000;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < m; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / m;
    const double r = std::sqrt(1.0 - z * z);
    const double u[3] = {r * std::cos(golden * k), r * std::sin(golden * k), z};
    best = std::min(best, rec(std::span<const double>(u, dim_ >= 3 ? 3 : dim_)));
  }
  return best;
}

}  // namespace epigauss
