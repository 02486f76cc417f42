#pragma once

#include <optional>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/transform/legendre.hpp"

namespace epigauss {

/// φ □ (ψ t) = (φ* + t ψ*)* on grids. Both conjugates share one slope grid
/// (the union of the default slope boxes, 2m − 1 nodes per axis); the result
/// is +∞ outside dom φ + t dom ψ. The output grid defaults to the box
/// φ.box + t ψ.box with φ's node counts.
GridFunction inf_convolution(const GridFunction& phi, const GridFunction& psi, double t,
                             std::optional<QueryGrid> output = std::nullopt);

/// Grid used when a non-grid operand has to be sampled.
struct SamplingGrid {
  double radius = 8.0;
  std::size_t points = 257;
};

/// Exact for separable operands (including 1-D PL) and for 2-D PL pairs
/// whose conjugates are PL; other combinations are sampled and routed
/// through the grid version.
ConvexFunction inf_convolution(const ConvexFunction& phi, const ConvexFunction& psi, double t,
                               const SamplingGrid& sampling = {});

/// Sum of PL functions: pieces a_i + s c_j, domain the intersection.
PLConvexFunction pl_sum(const PLConvexFunction& f, const PLConvexFunction& g, double s = 1.0);

/// The grid form of f, sampled on [-r, r]^n unless f already is a grid.
GridFunction to_grid(const ConvexFunction& f, const SamplingGrid& sampling);

}  // namespace epigauss
