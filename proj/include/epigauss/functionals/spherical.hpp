#pragma once

#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

struct SphericalAtom {
  Vec normal;
  double mass = 0.0;
};

/// ν_γ(φ, ·): c_{n+1} e^{-|x|²/2} √(2π) Φ̄(φ(x)) on ∂D_φ pushed forward by
/// the outer normal. One atom per endpoint (n = 1) or boundary edge (n = 2);
/// vertices carry nothing.
struct SphericalMeasureEstimate {
  std::size_t n = 0;
  std::vector<SphericalAtom> atoms;
  double total_mass = 0.0;
  bool full_domain = false;  // empty boundary, zero measure
};

/// Throws unsupported_dimension for n ≥ 3 unless the domain is all of R^n.
SphericalMeasureEstimate spherical_measure(const ConvexFunction& f, const QuadratureConfig& cfg);

/// ∫_{∂D_φ} h(ν(x)) c_{n+1} e^{-|x|²/2} √(2π) Φ̄(φ(x)) dℋ^{n-1} with h
/// applied per face; faces where the boundary density vanishes are skipped
/// so h may be +∞ there.
double boundary_integral(const ConvexFunction& f, const QuadratureConfig& cfg,
                         const std::function<double(const Face&)>& h);

}  // namespace epigauss
