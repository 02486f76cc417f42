#pragma once

#include "epigauss/core/convex_function.hpp"
#include "epigauss/core/polygon.hpp"
#include "epigauss/core/weights.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

/// γ_{n+1}(φ) = (2π)^{-n/2} ∫ e^{-|x|²/2} Φ̄(φ(x)) dx over [-R, R]^n.
double epigraph_volume(const ConvexFunction& f, const QuadratureConfig& cfg);

/// ∫ ω(x) H_η(φ(x)) dx. Non-Gaussian ω needs φ ∈ 𝓛 (or a bounded domain);
/// the integration cube is then widened to where the tail is negligible.
/// Throws divergent_tail when the integral cannot be finite.
double weighted_epigraph_volume(const ConvexFunction& f, const WeightPair& weights, const QuadratureConfig& cfg);

/// γ_n(K) for an interval, a box (exact through Φ̄) and a polygon (fan
/// quadrature).
double gaussian_body_volume(double lo, double hi);
double gaussian_body_volume(const BoxDomain& box);
double gaussian_body_volume(const Polygon& body, const QuadratureConfig& cfg);

/// Quantities whose finiteness underpins the variation formula.
struct FinitenessAudit {
  double moment = 0.0;         // ∫ |x|^p e^{-|x|²/2} Φ̄(φ) dx
  double gradient_term = 0.0;  // ∫ |∇φ| e^{-φ²/2} e^{-|x|²/2} dx
  double value_term = 0.0;     // (2π)^{-n/2} ∫ |φ| e^{-|x|²/2} e^{-φ²/2} dx, at most e^{-1/2}
  bool finite_nonnegative() const;
  bool within_bound() const;
};

FinitenessAudit finiteness_audit(const ConvexFunction& f, double p, const QuadratureConfig& cfg);

}  // namespace epigauss
