#include "epigauss/core/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace epigauss {
namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

double Polygon::area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point2& p = vertices[i];
    const Point2& q = vertices[(i + 1) % vertices.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * s;
}

Point2 Polygon::centroid() const {
  Point2 c{0.0, 0.0};
  for (const Point2& p : vertices) {
    c[0] += p[0];
    c[1] += p[1];
  }
  c[0] /= static_cast<double>(vertices.size());
  c[1] /= static_cast<double>(vertices.size());
  return c;
}

Polygon square_polygon(double r) {
  return Polygon{{{-r, -r}, {r, -r}, {r, r}, {-r, r}}, {-1, -1, -1, -1}};
}

Polygon clip(const Polygon& poly, const Point2& u, double c, int tag) {
  Polygon out;
  const std::size_t m = poly.vertices.size();
  auto side = [&](const Point2& p) { return u[0] * p[0] + u[1] * p[1] - c; };
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& p = poly.vertices[i];
    const Point2& q = poly.vertices[(i + 1) % m];
    const double dp = side(p), dq = side(q);
    auto meet = [&] {
      const double s = dp / (dp - dq);
      return Point2{p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])};
    };
    if (dp <= 0.0) {
      out.vertices.push_back(p);
      out.tags.push_back(poly.tags[i]);
      if (dq > 0.0) {
        out.vertices.push_back(meet());
        out.tags.push_back(tag);
      }
    } else if (dq <= 0.0) {
      out.vertices.push_back(meet());
      out.tags.push_back(poly.tags[i]);
    }
  }
  // Drop zero-length edges; the surviving vertex keeps the later edge's tag.
  Polygon clean;
  const std::size_t k = out.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point2& p = out.vertices[i];
    const Point2& q = out.vertices[(i + 1) % k];
    if (std::hypot(q[0] - p[0], q[1] - p[1]) <= 1e-14 * (1.0 + std::hypot(p[0], p[1])) && k > 1) continue;
    clean.vertices.push_back(p);
    clean.tags.push_back(out.tags[i]);
  }
  return clean;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace epigauss
