#pragma once

#include <functional>

#include "epigauss/core/grid_function.hpp"

namespace epigauss {

struct MongeAmpereReport {
  /// |g(∇φ) det ∇²φ − τ c_{n+1} e^{-φ²/2} e^{-|y|²/2}| at interior nodes,
  /// +∞ where the stencil leaves the finite region.
  GridFunction field;
  double max_residual = 0.0;
  std::size_t excluded = 0;  // interior nodes without a finite 3^n stencil
};

/// Central-difference gradients and Hessians (n ∈ {1, 2}).
MongeAmpereReport monge_ampere_residual(const GridFunction& phi, const std::function<double(std::span<const double>)>& g,
                                        double tau);

}  // namespace epigauss
