#include "epigauss/core/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross3(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double orient(const P3& a, const P3& b, const P3& c, const P3& p) { return dot3(cross3(sub(b, a), sub(c, a)), sub(p, a)); }

PLConvexFunction envelope_1d(const std::vector<Sample>& samples) {
  std::vector<std::pair<double, double>> pts;
  for (const Sample& s : samples) pts.emplace_back(s.x[0], s.v);
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().first == p.first) continue;  // equal x: the smaller v came first
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cr = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cr > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  if (hull.size() < 2) throw Error(ErrorKind::degenerate_input, "1-D envelope needs two distinct sample sites");
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const double s = (hull[i + 1].second - hull[i].second) / (hull[i + 1].first - hull[i].first);
    pieces.push_back({{s}, hull[i].second - s * hull[i].first});
  }
  std::vector<Halfspace> dom{{{1.0}, hull.back().first}, {{-1.0}, -hull.front().first}};
  return PLConvexFunction(std::move(pieces), std::move(dom));
}

PLConvexFunction envelope_2d(const std::vector<Sample>& samples) {
  // Site hull gives the domain and the degeneracy check.
  std::vector<Point2> sites;
  for (const Sample& s : samples) sites.push_back({s.x[0], s.x[1]});
  const std::vector<Point2> site_hull = convex_hull(sites);
  if (site_hull.size() < 3) throw Error(ErrorKind::degenerate_input, "2-D envelope needs three affinely independent sites");
  std::vector<Halfspace> dom;
  for (std::size_t i = 0; i < site_hull.size(); ++i) {
    const Point2& a = site_hull[i];
    const Point2& b = site_hull[(i + 1) % site_hull.size()];
    const Vec nrm{b[1] - a[1], a[0] - b[0]};
    dom.push_back({nrm, nrm[0] * a[0] + nrm[1] * a[1]});
  }

  // Normalised copies for robust orientation tests.
  double xlo = samples[0].x[0], xhi = xlo, ylo = samples[0].x[1], yhi = ylo, vlo = samples[0].v, vhi = vlo;
  for (const Sample& s : samples) {
    xlo = std::min(xlo, s.x[0]);
    xhi = std::max(xhi, s.x[0]);
    ylo = std::min(ylo, s.x[1]);
    yhi = std::max(yhi, s.x[1]);
    vlo = std::min(vlo, s.v);
    vhi = std::max(vhi, s.v);
  }
  const double sx = std::max(xhi - xlo, yhi - ylo);
  const double sv = vhi > vlo ? vhi - vlo : 1.0;
  std::vector<P3> p;
  for (const Sample& s : samples) p.push_back({(s.x[0] - xlo) / sx, (s.x[1] - ylo) / sx, (s.v - vlo) / sv});
  const double eps = 1e-11;
  const std::size_t n = p.size();

  auto plane_piece = [&](std::size_t a, std::size_t b, std::size_t c) {
    const P3 A{samples[a].x[0], samples[a].x[1], samples[a].v};
    const P3 B{samples[b].x[0], samples[b].x[1], samples[b].v};
    const P3 C{samples[c].x[0], samples[c].x[1], samples[c].v};
    const P3 nv = cross3(sub(B, A), sub(C, A));
    const double s0 = -nv[0] / nv[2], s1 = -nv[1] / nv[2];
    return AffinePiece{{s0, s1}, A[2] - s0 * A[0] - s1 * A[1]};
  };

  // Initial tetrahedron.
  std::size_t i0 = 0, i1 = 0, i2 = 0, i3 = n;
  double best = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const P3 d = sub(p[i], p[i0]);
    if (dot3(d, d) > best) {
      best = dot3(d, d);
      i1 = i;
    }
  }
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const P3 c = cross3(sub(p[i1], p[i0]), sub(p[i], p[i0]));
    if (dot3(c, c) > best) {
      best = dot3(c, c);
      i2 = i;
    }
  }
  best = eps;
  for (std::size_t i = 0; i < n; ++i) {
    const double o = std::abs(orient(p[i0], p[i1], p[i2], p[i]));
    if (o > best) {
      best = o;
      i3 = i;
    }
  }
  if (i3 == n) {
    // All lifted points coplanar: a single affine piece. Pick a site triple
    // that is not collinear in the plane.
    std::size_t a = 0, b = 0, c = 0;
    double area = 0.0;
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const double cr = std::abs((p[j][0] - p[0][0]) * (p[k][1] - p[0][1]) - (p[j][1] - p[0][1]) * (p[k][0] - p[0][0]));
        if (cr > area) {
          area = cr;
          a = 0;
          b = j;
          c = k;
        }
      }
    return PLConvexFunction({plane_piece(a, b, c)}, std::move(dom));
  }

  struct Face {
    std::size_t a, b, c;
    std::size_t alive = 1;
  };
  std::vector<Face> faces;
  const P3 centre{(p[i0][0] + p[i1][0] + p[i2][0] + p[i3][0]) / 4, (p[i0][1] + p[i1][1] + p[i2][1] + p[i3][1]) / 4,
                  (p[i0][2] + p[i1][2] + p[i2][2] + p[i3][2]) / 4};
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (orient(p[a], p[b], p[c], centre) > 0.0) std::swap(b, c);
    faces.push_back(Face{a, b, c, 1});
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  for (std::size_t q = 0; q < n; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && orient(p[faces[f].a], p[faces[f].b], p[faces[f].c], p[q]) > eps) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> owner;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      owner[{faces[f].a, faces[f].b}] = f;
      owner[{faces[f].b, faces[f].c}] = f;
      owner[{faces[f].c, faces[f].a}] = f;
    }
    std::vector<bool> is_visible(faces.size(), false);
    for (std::size_t f : visible) is_visible[f] = true;
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t f : visible) {
      const std::size_t e[3][2] = {{faces[f].a, faces[f].b}, {faces[f].b, faces[f].c}, {faces[f].c, faces[f].a}};
      for (const auto& ed : e) {
        const auto it = owner.find({ed[1], ed[0]});
        if (it == owner.end() || !is_visible[it->second]) horizon.emplace_back(ed[0], ed[1]);
      }
    }
    for (std::size_t f : visible) faces[f].alive = 0;
    for (const auto& [u, v] : horizon) faces.push_back(Face{u, v, q, 1});
  }

  std::vector<AffinePiece> pieces;
  for (const Face& f : faces) {
    if (!f.alive) continue;
    const P3 nv = cross3(sub(p[f.b], p[f.a]), sub(p[f.c], p[f.a]));
    const double len = std::sqrt(dot3(nv, nv));
    if (!(nv[2] < -1e-9 * len)) continue;  // upper or vertical face
    AffinePiece piece = plane_piece(f.a, f.b, f.c);
    const bool dup = std::any_of(pieces.begin(), pieces.end(), [&](const AffinePiece& o) {
      const double scale = 1.0 + std::abs(o.slope[0]) + std::abs(o.slope[1]) + std::abs(o.intercept);
      return std::abs(o.slope[0] - piece.slope[0]) + std::abs(o.slope[1] - piece.slope[1]) +
                 std::abs(o.intercept - piece.intercept) <= 1e-9 * scale;
    });
    if (!dup) pieces.push_back(std::move(piece));
  }
  if (pieces.empty()) throw Error(ErrorKind::degenerate_input, "lower hull has no faces");
  return PLConvexFunction(std::move(pieces), std::move(dom));
}

}  // namespace

double support_function(const std::vector<Vec>& points, std::span<const double> y) {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "support function of an empty point set");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& x : points) best = std::max(best, dot(x, y));
  return best;
}

PLConvexFunction lower_convex_envelope(const std::vector<Sample>& samples) {
  if (samples.empty()) throw Error(ErrorKind::degenerate_input, "no samples");
  const std::size_t n = samples.front().x.size();
  for (const Sample& s : samples) {
    if (s.x.size() != n) throw Error(ErrorKind::dimension_mismatch, "samples of mixed dimension");
    if (!std::isfinite(s.v)) throw Error(ErrorKind::invalid_argument, "envelope samples must be finite");
  }
  if (n == 1) return envelope_1d(samples);
  if (n == 2) return envelope_2d(samples);
  throw Error(ErrorKind::unsupported_dimension, "envelopes support n in {1,2}, got " + std::to_string(n));
}

}  // namespace epigauss
