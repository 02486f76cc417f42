#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace epigauss {

enum class QuadratureRule { trapezoid, simpson };

/// Tensor-product quadrature over the truncated cube [-R, R]^n.
struct QuadratureConfig {
  double truncation_radius = 8.0;
  std::size_t points_per_axis = 513;
  QuadratureRule rule = QuadratureRule::simpson;

  /// Throws invalid_argument unless R ≥ 6, points ≥ 33 and odd for Simpson.
  void validate() const;
  /// The node-count part of validate(); generic box integrals accept any R.
  void validate_points() const;
  double spacing() const { return 2.0 * truncation_radius / static_cast<double>(points_per_axis - 1); }
  /// Same rule with the node spacing divided by `factor`.
  QuadratureConfig refined(std::size_t factor) const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool empty() const { return !(hi > lo); }
};

using AxisBox = std::vector<Interval>;

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite rule on one interval. With `nudge_ends` the two end nodes are
/// moved one ulp inward so one-sided quantities (gradients at kinks, values
/// at domain edges) are taken from inside the interval.
AxisRule make_axis_rule(Interval iv, std::size_t points, QuadratureRule rule, bool nudge_ends = true);

/// Floor on the nodes per axis of every box, triangle and face piece, so
/// short pieces are not integrated with only a handful of nodes.
inline constexpr std::size_t kMinPiecePoints = 129;

/// Node count giving an interval of this length the configured spacing.
std::size_t points_for_length(double length, const QuadratureConfig& cfg);

struct Triangle {
  std::array<double, 2> a, b, c;
};

/// A union of axis-aligned boxes and (2-D only) triangles with disjoint
/// interiors. Integrands are expected to be smooth on each piece.
struct Region {
  std::size_t dim = 0;
  std::vector<AxisBox> boxes;
  std::vector<Triangle> triangles;
  bool empty() const { return boxes.empty() && triangles.empty(); }
};

struct QuadNode {
  std::span<const double> x;
  double weight = 0.0;
  /// Per-axis node index inside the current box; empty for triangle nodes.
  std::span<const std::size_t> index;
};

/// Integrand with `outputs()` components. `begin_box` runs sequentially
/// before the (possibly parallel) node sweep of each box, so it may build
/// per-axis tables; `accumulate` must be thread safe.
class RegionKernel {
 public:
  virtual ~RegionKernel() = default;
  virtual std::size_t outputs() const { return 1; }
  virtual void begin_box(std::span<const AxisRule> axes) { (void)axes; }
  virtual void begin_triangles() {}
  virtual void accumulate(const QuadNode& node, std::span<double> acc) const = 0;
};

/// Integrates every component of the kernel over the region. Node sums are
/// formed in fixed-size blocks and merged pairwise, so results are
/// bit-identical for any thread count.
std::vector<double> integrate_region(const Region& region, const QuadratureConfig& cfg, RegionKernel& kernel);

using ScalarField = std::function<double(std::span<const double>)>;

double integrate_region(const Region& region, const QuadratureConfig& cfg, const ScalarField& f);

/// ∫_{[-R,R]^n} f for n ∈ {1,2,3}.
double box_integral(const ScalarField& f, std::size_t n, const QuadratureConfig& cfg);

/// The cube [-R, R]^n as a region.
Region cube_region(std::size_t n, double radius);

}  // namespace epigauss
