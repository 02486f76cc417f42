#include "epigauss/core/convex_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

constexpr double kInf = Plq::kInf;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Sub-intervals of [lo, hi] ∩ [-r, r] separated by the given cut points.
std::vector<Interval> split_interval(double lo, double hi, double r, std::vector<double> cuts) {
  const double a = std::max(lo, -r), b = std::min(hi, r);
  std::vector<Interval> out;
  if (!(a < b)) return out;
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (a < c && c < b && c > pts.back()) pts.push_back(c);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back({pts[i], pts[i + 1]});
  return out;
}

void product_boxes(const std::vector<std::vector<Interval>>& axes, std::size_t k, AxisBox& cur, std::vector<AxisBox>& out) {
  if (k == axes.size()) {
    out.push_back(cur);
    return;
  }
  for (const Interval& iv : axes[k]) {
    cur[k] = iv;
    product_boxes(axes, k + 1, cur, out);
  }
}

Region boxes_from_axes(const std::vector<std::vector<Interval>>& axes) {
  Region r;
  r.dim = axes.size();
  for (const auto& a : axes)
    if (a.empty()) return r;
  AxisBox cur(axes.size());
  product_boxes(axes, 0, cur, r.boxes);
  return r;
}

double box_support(const Vec& lo, const Vec& hi, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (u[k] > 0.0) s += u[k] * hi[k];
    else if (u[k] < 0.0) s += u[k] * lo[k];
  }
  return std::isnan(s) ? kInf : s;
}

// Faces of an axis box [lo, hi] (possibly infinite) in n ≤ 2; `kinks[k]`
// are the cut points along axis k for faces running parallel to it.
std::vector<Face> box_faces(const Vec& lo, const Vec& hi, double r, const std::vector<std::vector<double>>& kinks) {
  const std::size_t n = lo.size();
  std::vector<Face> faces;
  if (n == 1) {
    if (std::isfinite(lo[0]) && lo[0] < hi[0]) faces.push_back({{lo[0]}, {}, {-1.0}, {}});
    if (std::isfinite(hi[0]) && lo[0] < hi[0]) faces.push_back({{hi[0]}, {}, {1.0}, {}});
    return faces;
  }
  if (n != 2) {
    for (std::size_t k = 0; k < n; ++k)
      if (std::isfinite(lo[k]) || std::isfinite(hi[k]))
        throw Error(ErrorKind::unsupported_dimension, "boundary integrals support n <= 2");
    return faces;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t o = 1 - k;
    const double a = std::max(lo[o], -r), b = std::min(hi[o], r);
    if (!(a < b) || !(lo[k] < hi[k])) continue;
    for (int side = 0; side < 2; ++side) {
      const double at = side == 0 ? lo[k] : hi[k];
      if (!std::isfinite(at)) continue;
      Face f;
      f.a = Vec(2);
      f.b = Vec(2);
      f.normal = Vec(2, 0.0);
      f.a[k] = at;
      f.b[k] = at;
      f.a[o] = a;
      f.b[o] = b;
      f.normal[k] = side == 0 ? -1.0 : 1.0;
      for (double c : kinks[o])
        if (a < c && c < b) f.splits.push_back((c - a) / (b - a));
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

std::vector<Face> pl_faces(const PLConvexFunction& f, double r) {
  std::vector<Face> faces;
  if (f.full_domain()) return faces;
  if (f.dim() == 1) {
    const Interval iv = f.interval_domain();
    return box_faces({iv.lo}, {iv.hi}, r, {{}});
  }
  if (f.dim() != 2) throw Error(ErrorKind::unsupported_dimension, "boundary integrals support n <= 2");
  const Polygon poly = f.polygon_domain(r);
  const std::size_t m = poly.vertices.size();
  if (m < 2) return faces;
  for (std::size_t i = 0; i < m; ++i) {
    if (poly.tags[i] < 0) continue;
    const Point2& p = poly.vertices[i];
    const Point2& q = poly.vertices[(i + 1) % m];
    const Vec& u = f.domain()[static_cast<std::size_t>(poly.tags[i])].normal;
    const double len = norm(u);
    Face face{{p[0], p[1]}, {q[0], q[1]}, {u[0] / len, u[1] / len}, {}};
    // Parameters where two maximal pieces swap along the edge.
    const auto& ps = f.pieces();
    for (std::size_t a = 0; a < ps.size(); ++a)
      for (std::size_t b = a + 1; b < ps.size(); ++b) {
        auto diff = [&](const Point2& x) {
          return (ps[a].slope[0] - ps[b].slope[0]) * x[0] + (ps[a].slope[1] - ps[b].slope[1]) * x[1] +
                 ps[a].intercept - ps[b].intercept;
        };
        const double d0 = diff(p), d1 = diff(q);
        if (d0 == d1 || (d0 > 0) == (d1 > 0)) continue;
        const double s = d0 / (d0 - d1);
        if (!(s > 0.0 && s < 1.0)) continue;
        const double x[2] = {p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])};
        const double top = f.max_affine(x);
        const double va = ps[a].slope[0] * x[0] + ps[a].slope[1] * x[1] + ps[a].intercept;
        if (va >= top - 1e-12 * std::max(1.0, std::abs(top))) face.splits.push_back(s);
      }
    std::sort(face.splits.begin(), face.splits.end());
    faces.push_back(std::move(face));
  }
  return faces;
}

double pl_domain_support(const PLConvexFunction& f, std::span<const double> u) {
  if (std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; })) return 0.0;
  if (f.full_domain()) return kInf;
  if (f.dim() == 1) {
    const Interval iv = f.interval_domain();
    return box_support({iv.lo}, {iv.hi}, u);
  }
  if (f.dim() != 2) throw Error(ErrorKind::unsupported_dimension, "domain support for PL functions needs n <= 2");
  auto at = [&](double r) {
    double s = -kInf;
    for (const Point2& v : f.polygon_domain(r).vertices) s = std::max(s, u[0] * v[0] + u[1] * v[1]);
    return s;
  };
  const double s1 = at(1e6), s2 = at(2e6);
  return s2 > s1 + 1e-6 * (1.0 + std::abs(s1)) ? kInf : s1;
}

double pl_growth(const PLConvexFunction& f) {
  if (f.full_domain()) return f.recession_minimum();
  if (f.dim() == 1) return f.to_plq().growth();
  if (f.bounded_domain()) return kInf;
  if (f.dim() != 2) throw Error(ErrorKind::unsupported_dimension, "growth of restricted PL functions needs n <= 2");
  double best = kInf;
  for (int k = 0; k < 3600; ++k) {
    const double th = 2.0 * kPi * k / 3600.0;
    const double d[2] = {std::cos(th), std::sin(th)};
    const bool recedes = std::all_of(f.domain().begin(), f.domain().end(),
                                     [&](const Halfspace& h) { return h.normal[0] * d[0] + h.normal[1] * d[1] <= 1e-12; });
    if (!recedes) continue;
    double m = -kInf;
    for (const AffinePiece& p : f.pieces()) m = std::max(m, p.slope[0] * d[0] + p.slope[1] * d[1]);
    best = std::min(best, m);
  }
  return best;
}

}  // namespace

std::size_t dimension(const ConvexFunction& f) {
  return std::visit([](const auto& g) { return g.dim(); }, f);
}

ExtReal evaluate(const ConvexFunction& f, std::span<const double> x) {
  return std::visit([&](const auto& g) { return g.eval(x); }, f);
}

Vec gradient_at(const ConvexFunction& f, std::span<const double> x) {
  return std::visit(Overloaded{
                        [&](const GridFunction& g) {
                          auto v = g.interpolated_gradient(x);
                          if (!v) throw Error(ErrorKind::not_differentiable_here, "grid gradient outside the finite region");
                          return *v;
                        },
                        [&](const auto& g) { return g.gradient(x); },
                    },
                    f);
}

double growth_rate(const ConvexFunction& f) {
  return std::visit(Overloaded{
                        [](const GridFunction&) { return kInf; },
                        [](const PLConvexFunction& g) { return pl_growth(g); },
                        [](const SeparableFunction& g) { return g.growth(); },
                    },
                    f);
}

bool in_class_L(const ConvexFunction& f) {
  if (const auto* pl = std::get_if<PLConvexFunction>(&f)) return pl->in_class_L();
  return growth_rate(f) > 1e-12;
}

bool origin_interior(const ConvexFunction& f) {
  return std::visit(Overloaded{
                        [](const GridFunction& g) {
                          const auto e = g.finite_extent();
                          if (!e) return false;
                          for (std::size_t k = 0; k < g.dim(); ++k)
                            if (!(e->lo[k] < 0.0 && 0.0 < e->hi[k])) return false;
                          return g.eval(Vec(g.dim(), 0.0)).is_finite();
                        },
                        [](const PLConvexFunction& g) {
                          return std::all_of(g.domain().begin(), g.domain().end(),
                                             [](const Halfspace& h) { return h.offset > 0.0; });
                        },
                        [](const SeparableFunction& g) {
                          for (const Plq& p : g.axes())
                            if (!(p.lo() < 0.0 && 0.0 < p.hi())) return false;
                          return true;
                        },
                    },
                    f);
}

bool full_domain(const ConvexFunction& f) {
  return std::visit(Overloaded{
                        [](const GridFunction&) { return false; },
                        [](const PLConvexFunction& g) { return g.full_domain(); },
                        [](const SeparableFunction& g) {
                          for (const Plq& p : g.axes())
                            if (std::isfinite(p.lo()) || std::isfinite(p.hi())) return false;
                          return true;
                        },
                    },
                    f);
}

double domain_support(const ConvexFunction& f, std::span<const double> u) {
  if (u.size() != dimension(f)) throw Error(ErrorKind::dimension_mismatch, "direction dimension differs from function");
  return std::visit(Overloaded{
                        [&](const GridFunction& g) {
                          const auto e = g.finite_extent();
                          if (!e) throw Error(ErrorKind::invalid_argument, "grid function is nowhere finite");
                          return box_support(e->lo, e->hi, u);
                        },
                        [&](const PLConvexFunction& g) { return pl_domain_support(g, u); },
                        [&](const SeparableFunction& g) { return box_support(g.domain_lo(), g.domain_hi(), u); },
                    },
                    f);
}

ConvexFunction right_scale(const ConvexFunction& f, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "right scaling needs t > 0");
  return std::visit(Overloaded{
                        [&](const GridFunction& g) -> ConvexFunction {
                          Vec lo = g.domain().lo(), hi = g.domain().hi();
                          for (double& v : lo) v *= t;
                          for (double& v : hi) v *= t;
                          std::vector<ExtReal> vals = g.values();
                          for (ExtReal& v : vals)
                            if (v.is_finite()) v = t * v.value();
                          return GridFunction(BoxDomain(lo, hi), g.shape(), std::move(vals), g.convex());
                        },
                        [&](const PLConvexFunction& g) -> ConvexFunction { return g.right_scaled(t); },
                        [&](const SeparableFunction& g) -> ConvexFunction { return g.right_scaled(t); },
                    },
                    f);
}

ConvexFunction shift(const ConvexFunction& f, double k) {
  return std::visit(Overloaded{
                        [&](const GridFunction& g) -> ConvexFunction {
                          std::vector<ExtReal> vals = g.values();
                          for (ExtReal& v : vals)
                            if (v.is_finite()) v = v.value() + k;
                          return GridFunction(g.domain(), g.shape(), std::move(vals), g.convex());
                        },
                        [&](const PLConvexFunction& g) -> ConvexFunction { return g.shifted(k); },
                        [&](const SeparableFunction& g) -> ConvexFunction { return g.shifted(k); },
                    },
                    f);
}

std::optional<SeparableFunction> as_separable(const ConvexFunction& f) {
  if (const auto* s = std::get_if<SeparableFunction>(&f)) return *s;
  if (const auto* pl = std::get_if<PLConvexFunction>(&f); pl && pl->dim() == 1) return SeparableFunction({pl->to_plq()});
  return std::nullopt;
}

Region domain_region(const ConvexFunction& f, double r) {
  return std::visit(
      Overloaded{
          [&](const GridFunction& g) {
            std::vector<std::vector<Interval>> axes;
            for (std::size_t k = 0; k < g.dim(); ++k)
              axes.push_back(split_interval(g.domain().lo()[k], g.domain().hi()[k], r, {}));
            return boxes_from_axes(axes);
          },
          [&](const SeparableFunction& g) {
            std::vector<std::vector<Interval>> axes;
            for (const Plq& p : g.axes()) axes.push_back(split_interval(p.lo(), p.hi(), r, p.kinks()));
            return boxes_from_axes(axes);
          },
          [&](const PLConvexFunction& g) {
            if (g.dim() == 1) {
              const Plq p = g.to_plq();
              return boxes_from_axes({split_interval(p.lo(), p.hi(), r, p.kinks())});
            }
            if (g.full_domain()) return cube_region(g.dim(), r);
            if (g.dim() != 2) throw Error(ErrorKind::unsupported_dimension, "restricted PL domains need n <= 2");
            Region reg;
            reg.dim = 2;
            const Polygon poly = g.polygon_domain(r);
            if (poly.empty()) return reg;
            const Point2 c = poly.centroid();
            for (std::size_t i = 0; i < poly.vertices.size(); ++i)
              reg.triangles.push_back({c, poly.vertices[i], poly.vertices[(i + 1) % poly.vertices.size()]});
            return reg;
          },
      },
      f);
}

std::vector<Face> boundary_faces(const ConvexFunction& f, double r) {
  return std::visit(Overloaded{
                        [&](const GridFunction& g) {
                          const auto e = g.finite_extent();
                          if (!e) return std::vector<Face>{};
                          return box_faces(e->lo, e->hi, r, std::vector<std::vector<double>>(g.dim()));
                        },
                        [&](const SeparableFunction& g) {
                          std::vector<std::vector<double>> kinks;
                          for (const Plq& p : g.axes()) kinks.push_back(p.kinks());
                          return box_faces(g.domain_lo(), g.domain_hi(), r, kinks);
                        },
                        [&](const PLConvexFunction& g) { return pl_faces(g, r); },
                    },
                    f);
}

double integrate_face(const Face& face, const QuadratureConfig& cfg, const ScalarField& g) {
  if (face.b.empty()) return g(face.a);
  const std::size_t n = face.a.size();
  Vec d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = face.b[k] - face.a[k];
  const double len = norm(d);
  if (len == 0.0) return 0.0;
  std::vector<double> cuts{0.0};
  for (double s : face.splits)
    if (s > cuts.back() && s < 1.0) cuts.push_back(s);
  cuts.push_back(1.0);
  Vec x(n);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const AxisRule rule =
        make_axis_rule({cuts[j], cuts[j + 1]},
                       std::max(points_for_length((cuts[j + 1] - cuts[j]) * len, cfg), kMinPiecePoints), cfg.rule, false);
    double part = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      for (std::size_t k = 0; k < n; ++k) x[k] = face.a[k] + rule.nodes[i] * d[k];
      part += rule.weights[i] * g(x);
    }
    total += part * len;
  }
  return total;
}

}  // namespace epigauss

namespace epigauss {

double fenchel_young_residual(const GridFunction& f, const Evaluator& f_star, std::span<const std::size_t> node) {
  const Vec g = f.gradient(node);
  const Vec x = f.node(node);
  const ExtReal fs = f_star(g);
  if (fs.is_infinite()) return Plq::kInf;
  return std::abs(fs.value() + f.at(node).value() - dot(x, g));
}

}  // namespace epigauss
