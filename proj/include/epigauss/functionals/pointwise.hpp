#pragma once

#include <functional>
#include <span>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

/// What an integrand sees at a quadrature node inside dom f.
struct PointData {
  std::span<const double> x;
  double weight = 0.0;
  double value = 0.0;
  std::span<const double> grad;
  /// PL inputs: the maximising pieces (several at ties); empty otherwise.
  std::span<const std::size_t> active;
};

using PointIntegrand = std::function<void(const PointData&, std::span<double>)>;

/// Σ over the nodes of domain_region(f, R) where f is finite, each node
/// adding into `outputs` accumulators. Node sums are deterministic for any
/// thread count. Ties between PL pieces are detected at relative 1e-12.
std::vector<double> integrate_function(const ConvexFunction& f, const QuadratureConfig& cfg, std::size_t outputs,
                                       const PointIntegrand& integrand);

}  // namespace epigauss
