#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epigauss/core/box_domain.hpp"
#include "epigauss/numerics/ext_real.hpp"

namespace epigauss {

struct ConvexityAudit {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest second-difference deficit found
  bool passed() const { return violations == 0; }
};

/// Extended-real samples on a uniform grid over a box, row-major with the
/// last axis fastest. Finite entries must form a convex sublattice.
class GridFunction {
 public:
  GridFunction(BoxDomain domain, std::vector<std::size_t> shape, std::vector<ExtReal> values, bool convex = false);

  static GridFunction sample(const BoxDomain& domain, std::vector<std::size_t> shape,
                             const std::function<ExtReal(std::span<const double>)>& f, bool convex = false);

  std::size_t dim() const { return domain_.dim(); }
  const BoxDomain& domain() const { return domain_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<ExtReal>& values() const { return values_; }
  bool convex() const { return convex_; }
  std::size_t size() const { return values_.size(); }

  double spacing(std::size_t axis) const;
  double coordinate(std::size_t axis, std::size_t i) const;
  Vec node(std::span<const std::size_t> idx) const;
  std::size_t linear(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unravel(std::size_t lin) const;
  ExtReal at(std::span<const std::size_t> idx) const { return values_[linear(idx)]; }

  /// Multilinear interpolation; +∞ outside the box or when any corner with
  /// nonzero weight is +∞.
  ExtReal eval(std::span<const double> x) const;

  /// Central differences, one-sided where a neighbour is +∞ or missing.
  /// Throws not_differentiable_here when an axis has no finite neighbour.
  Vec gradient(std::span<const std::size_t> idx) const;

  /// Gradient of the multilinear interpolant inside the cell containing x.
  std::optional<Vec> interpolated_gradient(std::span<const double> x) const;

  /// Midpoint convexity on axis-parallel and diagonal grid lines, plus
  /// convexity of the finite region along those lines.
  ConvexityAudit audit_convexity(double tol) const;

  /// Bounding box of the finite nodes; lo may equal hi on an axis.
  struct Extent {
    Vec lo, hi;
  };
  std::optional<Extent> finite_extent() const;

 private:
  void check_sublattice() const;

  BoxDomain domain_;
  std::vector<std::size_t> shape_;
  std::vector<ExtReal> values_;
  bool convex_ = false;
};

}  // namespace epigauss
