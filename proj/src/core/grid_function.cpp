#include "epigauss/core/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

// Directions in {-1,0,1}^n whose first nonzero entry is +1.
std::vector<std::vector<int>> line_directions(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(n, -1);
  while (true) {
    auto first = std::find_if(d.begin(), d.end(), [](int v) { return v != 0; });
    if (first != d.end() && *first == 1) out.push_back(d);
    std::size_t k = 0;
    while (k < n && d[k] == 1) d[k++] = -1;
    if (k == n) break;
    ++d[k];
  }
  return out;
}

}  // namespace

GridFunction::GridFunction(BoxDomain domain, std::vector<std::size_t> shape, std::vector<ExtReal> values, bool convex)
    : domain_(std::move(domain)), shape_(std::move(shape)), values_(std::move(values)), convex_(convex) {
  if (shape_.size() != domain_.dim()) throw Error(ErrorKind::dimension_mismatch, "grid shape rank differs from domain");
  if (dim() > 3) throw Error(ErrorKind::unsupported_dimension, "grids support n <= 3");
  std::size_t total = 1;
  for (std::size_t m : shape_) {
    if (m < 2) throw Error(ErrorKind::invalid_argument, "grid needs at least two nodes per axis");
    total *= m;
  }
  if (values_.size() != total)
    throw Error(ErrorKind::dimension_mismatch,
                "grid expects " + std::to_string(total) + " values, got " + std::to_string(values_.size()));
  check_sublattice();
  if (convex_) {
    const ConvexityAudit audit = audit_convexity(1e-9);
    if (!audit.passed())
      throw Error(ErrorKind::invalid_argument,
                  "grid flagged convex fails the line-convexity audit (worst deficit " + std::to_string(audit.worst) + ")");
  }
}

GridFunction GridFunction::sample(const BoxDomain& domain, std::vector<std::size_t> shape,
                                  const std::function<ExtReal(std::span<const double>)>& f, bool convex) {
  std::size_t total = 1;
  for (std::size_t m : shape) total *= m;
  std::vector<ExtReal> values(total);
  GridFunction probe(domain, shape, std::vector<ExtReal>(total, 0.0));
  for (std::size_t lin = 0; lin < total; ++lin) {
    const auto idx = probe.unravel(lin);
    values[lin] = f(probe.node(idx));
  }
  return GridFunction(domain, std::move(shape), std::move(values), convex);
}

double GridFunction::spacing(std::size_t axis) const {
  return (domain_.hi()[axis] - domain_.lo()[axis]) / static_cast<double>(shape_[axis] - 1);
}

double GridFunction::coordinate(std::size_t axis, std::size_t i) const {
  if (i + 1 == shape_[axis]) return domain_.hi()[axis];
  return domain_.lo()[axis] + spacing(axis) * static_cast<double>(i);
}

Vec GridFunction::node(std::span<const std::size_t> idx) const {
  Vec x(dim());
  for (std::size_t k = 0; k < dim(); ++k) x[k] = coordinate(k, idx[k]);
  return x;
}

std::size_t GridFunction::linear(std::span<const std::size_t> idx) const {
  std::size_t lin = 0;
  for (std::size_t k = 0; k < dim(); ++k) lin = lin * shape_[k] + idx[k];
  return lin;
}

std::vector<std::size_t> GridFunction::unravel(std::size_t lin) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    idx[k] = lin % shape_[k];
    lin /= shape_[k];
  }
  return idx;
}

ExtReal GridFunction::eval(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "evaluation point dimension differs from grid");
  if (!domain_.contains(x)) return ExtReal::infinity();
  std::vector<std::size_t> base(dim());
  Vec frac(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const double s = (x[k] - domain_.lo()[k]) / spacing(k);
    const auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(shape_[k] - 2)));
    base[k] = i;
    frac[k] = std::clamp(s - static_cast<double>(i), 0.0, 1.0);
  }
  double acc = 0.0;
  std::vector<std::size_t> corner(dim());
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim()); ++mask) {
    double w = 1.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      const bool up = (mask >> k) & 1u;
      corner[k] = base[k] + (up ? 1 : 0);
      w *= up ? frac[k] : 1.0 - frac[k];
    }
    if (w == 0.0) continue;
    const ExtReal v = at(corner);
    if (v.is_infinite()) return ExtReal::infinity();
    acc += w * v.value();
  }
  return acc;
}

Vec GridFunction::gradient(std::span<const std::size_t> idx) const {
  if (idx.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "node index rank differs from grid");
  const ExtReal center = at(idx);
  if (center.is_infinite()) throw Error(ErrorKind::not_differentiable_here, "gradient requested at a +inf node");
  Vec g(dim());
  std::vector<std::size_t> nb(idx.begin(), idx.end());
  for (std::size_t k = 0; k < dim(); ++k) {
    const double h = spacing(k);
    std::optional<double> left, right;
    if (idx[k] > 0) {
      nb[k] = idx[k] - 1;
      if (const ExtReal v = at(nb); v.is_finite()) left = v.value();
    }
    if (idx[k] + 1 < shape_[k]) {
      nb[k] = idx[k] + 1;
      if (const ExtReal v = at(nb); v.is_finite()) right = v.value();
    }
    nb[k] = idx[k];
    if (left && right) {
      g[k] = (*right - *left) / (2.0 * h);
    } else if (right) {
      g[k] = (*right - center.value()) / h;
    } else if (left) {
      g[k] = (center.value() - *left) / h;
    } else {
      throw Error(ErrorKind::not_differentiable_here, "no finite neighbour along axis " + std::to_string(k));
    }
  }
  return g;
}

std::optional<Vec> GridFunction::interpolated_gradient(std::span<const double> x) const {
  if (!domain_.contains(x)) return std::nullopt;
  std::vector<std::size_t> base(dim());
  Vec frac(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const double s = (x[k] - domain_.lo()[k]) / spacing(k);
    const auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(shape_[k] - 2)));
    base[k] = i;
    frac[k] = std::clamp(s - static_cast<double>(i), 0.0, 1.0);
  }
  Vec g(dim(), 0.0);
  std::vector<std::size_t> corner(dim());
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim()); ++mask) {
    for (std::size_t k = 0; k < dim(); ++k) corner[k] = base[k] + (((mask >> k) & 1u) ? 1 : 0);
    const ExtReal v = at(corner);
    if (v.is_infinite()) return std::nullopt;
    for (std::size_t d = 0; d < dim(); ++d) {
      double w = ((mask >> d) & 1u) ? 1.0 / spacing(d) : -1.0 / spacing(d);
      for (std::size_t k = 0; k < dim(); ++k) {
        if (k == d) continue;
        w *= ((mask >> k) & 1u) ? frac[k] : 1.0 - frac[k];
      }
      g[d] += w * v.value();
    }
  }
  return g;
}

ConvexityAudit GridFunction::audit_convexity(double tol) const {
  ConvexityAudit audit;
  const auto dirs = line_directions(dim());
  std::vector<std::size_t> lo(dim()), hi(dim());
  for (std::size_t lin = 0; lin < values_.size(); ++lin) {
    const auto idx = unravel(lin);
    const ExtReal c = values_[lin];
    for (const auto& d : dirs) {
      bool inside = true;
      for (std::size_t k = 0; k < dim() && inside; ++k) {
        const auto i = static_cast<long>(idx[k]);
        const long a = i - d[k], b = i + d[k];
        if (a < 0 || b < 0 || a >= static_cast<long>(shape_[k]) || b >= static_cast<long>(shape_[k])) inside = false;
        lo[k] = static_cast<std::size_t>(std::max(a, 0L));
        hi[k] = static_cast<std::size_t>(std::max(b, 0L));
      }
      if (!inside) continue;
      const ExtReal va = at(lo), vb = at(hi);
      if (va.is_infinite() || vb.is_infinite()) continue;
      ++audit.checks;
      if (c.is_infinite()) {
        ++audit.violations;
        audit.worst = std::numeric_limits<double>::infinity();
        continue;
      }
      const double deficit = 2.0 * c.value() - va.value() - vb.value();
      if (deficit > tol) {
        ++audit.violations;
        audit.worst = std::max(audit.worst, deficit);
      }
    }
  }
  return audit;
}

std::optional<GridFunction::Extent> GridFunction::finite_extent() const {
  Extent e{Vec(dim(), std::numeric_limits<double>::infinity()), Vec(dim(), -std::numeric_limits<double>::infinity())};
  bool any = false;
  for (std::size_t lin = 0; lin < values_.size(); ++lin) {
    if (values_[lin].is_infinite()) continue;
    any = true;
    const auto x = node(unravel(lin));
    for (std::size_t k = 0; k < dim(); ++k) {
      e.lo[k] = std::min(e.lo[k], x[k]);
      e.hi[k] = std::max(e.hi[k], x[k]);
    }
  }
  if (!any) return std::nullopt;
  return e;
}

void GridFunction::check_sublattice() const {
  // Along every axis line the finite entries must be one contiguous run.
  for (std::size_t axis = 0; axis < dim(); ++axis) {
    const std::size_t m = shape_[axis];
    for (std::size_t lin = 0; lin < values_.size(); ++lin) {
      auto idx = unravel(lin);
      if (idx[axis] != 0) continue;
      int runs = 0;
      bool prev = false;
      for (std::size_t i = 0; i < m; ++i) {
        idx[axis] = i;
        const bool fin = at(idx).is_finite();
        if (fin && !prev) ++runs;
        prev = fin;
      }
      if (runs > 1)
        throw Error(ErrorKind::invalid_argument, "finite region of the grid is not convex along axis " + std::to_string(axis));
    }
  }
}

}  // namespace epigauss
