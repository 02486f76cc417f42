#include "epigauss/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/parallel.hpp"

namespace epigauss {
namespace {

constexpr std::size_t kBlock = 512;
// Short boxes (between kinks or inside small domains) still get a rule fine
// enough for the indicator-level identities.

struct Plan {
  std::size_t dim;
  std::vector<AxisRule> axes;          // box axes, or (u, v) for a triangle
  const Triangle* triangle = nullptr;  // non-null for a Duffy-mapped triangle
  double jacobian = 0.0;
  std::size_t total() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.nodes.size();
    return n;
  }
};

std::vector<double> sweep(const Plan& plan, const RegionKernel& kernel, std::size_t k) {
  const std::size_t total = plan.total();
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<double> block_sums(blocks * k, 0.0);
  const std::size_t axes = plan.axes.size();

  parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
    std::vector<std::size_t> idx(axes);
    std::vector<double> x(plan.dim);
    std::vector<double> acc(k);
    for (std::size_t b = b0; b < b1; ++b) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const std::size_t end = std::min(total, (b + 1) * kBlock);
      for (std::size_t lin = b * kBlock; lin < end; ++lin) {
        std::size_t rem = lin;
        double w = 1.0;
        for (std::size_t a = axes; a-- > 0;) {
          const std::size_t m = plan.axes[a].nodes.size();
          idx[a] = rem % m;
          rem /= m;
          w *= plan.axes[a].weights[idx[a]];
        }
        if (plan.triangle == nullptr) {
          for (std::size_t a = 0; a < axes; ++a) x[a] = plan.axes[a].nodes[idx[a]];
          kernel.accumulate(QuadNode{x, w, idx}, acc);
        } else {
          const Triangle& t = *plan.triangle;
          const double u = plan.axes[0].nodes[idx[0]];
          const double v = plan.axes[1].nodes[idx[1]];
          for (std::size_t d = 0; d < 2; ++d) {
            const double edge = (1.0 - v) * (t.b[d] - t.a[d]) + v * (t.c[d] - t.a[d]);
            x[d] = t.a[d] + u * edge;
          }
          const double wt = w * u * plan.jacobian;
          if (wt != 0.0) kernel.accumulate(QuadNode{x, wt, {}}, acc);
        }
      }
      for (std::size_t c = 0; c < k; ++c) block_sums[b * k + c] = acc[c];
    }
  });

  std::vector<double> out(k);
  std::vector<double> column(blocks);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t b = 0; b < blocks; ++b) column[b] = block_sums[b * k + c];
    out[c] = pairwise_sum(column);
  }
  return out;
}

class FieldKernel final : public RegionKernel {
 public:
  explicit FieldKernel(const ScalarField& f) : f_(f) {}
  void accumulate(const QuadNode& node, std::span<double> acc) const override {
    acc[0] += node.weight * f_(node.x);
  }

 private:
  const ScalarField& f_;
};

}  // namespace

void QuadratureConfig::validate() const {
  if (!(truncation_radius >= 6.0))
    throw Error(ErrorKind::invalid_argument, "truncation radius must be >= 6");
  validate_points();
}

void QuadratureConfig::validate_points() const {
  if (!(truncation_radius > 0.0)) throw Error(ErrorKind::invalid_argument, "truncation radius must be positive");
  if (points_per_axis < 33) throw Error(ErrorKind::invalid_argument, "points_per_axis must be >= 33");
  if (rule == QuadratureRule::simpson && points_per_axis % 2 == 0)
    throw Error(ErrorKind::invalid_argument, "Simpson needs an odd points_per_axis");
}

QuadratureConfig QuadratureConfig::refined(std::size_t factor) const {
  QuadratureConfig out = *this;
  out.points_per_axis = factor * (points_per_axis - 1) + 1;
  return out;
}

AxisRule make_axis_rule(Interval iv, std::size_t points, QuadratureRule rule, bool nudge_ends) {
  AxisRule r;
  if (rule == QuadratureRule::simpson) {
    points = std::max<std::size_t>(points, 3);
    if (points % 2 == 0) ++points;
  } else {
    points = std::max<std::size_t>(points, 2);
  }
  r.nodes.resize(points);
  r.weights.resize(points);
  const double h = iv.length() / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) r.nodes[i] = iv.lo + h * static_cast<double>(i);
  r.nodes.back() = iv.hi;
  if (nudge_ends && iv.length() > 0.0) {
    r.nodes.front() = std::nextafter(iv.lo, iv.hi);
    r.nodes.back() = std::nextafter(iv.hi, iv.lo);
  }
  if (rule == QuadratureRule::simpson) {
    for (std::size_t i = 0; i < points; ++i) {
      const double c = (i == 0 || i + 1 == points) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      r.weights[i] = c * h / 3.0;
    }
  } else {
    for (std::size_t i = 0; i < points; ++i) r.weights[i] = (i == 0 || i + 1 == points) ? 0.5 * h : h;
  }
  return r;
}

std::size_t points_for_length(double length, const QuadratureConfig& cfg) {
  const double cells = std::ceil(length / cfg.spacing() - 1e-9);
  return static_cast<std::size_t>(std::max(cells, 1.0)) + 1;
}

std::vector<double> integrate_region(const Region& region, const QuadratureConfig& cfg, RegionKernel& kernel) {
  const std::size_t k = kernel.outputs();
  std::vector<std::vector<double>> piece_sums;

  for (const AxisBox& box : region.boxes) {
    if (box.size() != region.dim) throw Error(ErrorKind::dimension_mismatch, "box dimension differs from region");
    if (std::any_of(box.begin(), box.end(), [](const Interval& iv) { return iv.empty(); })) continue;
    Plan plan{region.dim, {}, nullptr, 0.0};
    for (const Interval& iv : box) plan.axes.push_back(
        make_axis_rule(iv, std::max(points_for_length(iv.length(), cfg), kMinPiecePoints), cfg.rule));
    kernel.begin_box(plan.axes);
    piece_sums.push_back(sweep(plan, kernel, k));
  }

  if (!region.triangles.empty()) {
    if (region.dim != 2) throw Error(ErrorKind::unsupported_dimension, "triangles need a 2-D region");
    kernel.begin_triangles();
    for (const Triangle& t : region.triangles) {
      const double e1x = t.b[0] - t.a[0], e1y = t.b[1] - t.a[1];
      const double e2x = t.c[0] - t.a[0], e2y = t.c[1] - t.a[1];
      const double det = std::abs(e1x * e2y - e1y * e2x);
      if (det == 0.0) continue;
      const double radial = std::max(std::hypot(e1x, e1y), std::hypot(e2x, e2y));
      const double across = std::hypot(t.c[0] - t.b[0], t.c[1] - t.b[1]);
      Plan plan{2, {}, &t, det};
      plan.axes.push_back(make_axis_rule({0.0, 1.0}, std::max(points_for_length(radial, cfg), kMinPiecePoints), cfg.rule, false));
      plan.axes.push_back(make_axis_rule({0.0, 1.0}, std::max(points_for_length(across, cfg), kMinPiecePoints), cfg.rule, false));
      piece_sums.push_back(sweep(plan, kernel, k));
    }
  }

  std::vector<double> out(k, 0.0);
  std::vector<double> column(piece_sums.size());
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t p = 0; p < piece_sums.size(); ++p) column[p] = piece_sums[p][c];
    out[c] = pairwise_sum(column);
  }
  return out;
}

double integrate_region(const Region& region, const QuadratureConfig& cfg, const ScalarField& f) {
  FieldKernel kernel(f);
  return integrate_region(region, cfg, kernel)[0];
}

Region cube_region(std::size_t n, double radius) {
  Region r;
  r.dim = n;
  r.boxes.push_back(AxisBox(n, Interval{-radius, radius}));
  return r;
}

double box_integral(const ScalarField& f, std::size_t n, const QuadratureConfig& cfg) {
  if (n == 0 || n > 3) throw Error(ErrorKind::unsupported_dimension, "box_integral supports n in {1,2,3}, got " + std::to_string(n));
  cfg.validate_points();
  return integrate_region(cube_region(n, cfg.truncation_radius), cfg, f);
}

}  // namespace epigauss
