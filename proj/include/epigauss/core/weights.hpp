#pragma once

#include <cstddef>
#include <span>

namespace epigauss {

/// Weights (ω, η) of a generalised epigraph volume ∫ ω(x) H_η(φ(x)) dx with
/// H_η(t) = ∫_t^∞ η(s) ds.
struct WeightPair {
  enum class Omega { gaussian, unit, power };
  enum class Eta { gaussian, exponential, alpha_concave };

  Omega omega = Omega::gaussian;
  double q = 1.0;  // power weight |x|^{q-n}
  Eta eta = Eta::gaussian;
  double alpha = -0.25;

  /// Throws invalid_argument unless q > 0 and, for α-concave η, -1/n < α < 0.
  void validate(std::size_t n) const;
  double omega_at(std::span<const double> x) const;
  /// H_η(t):
  ///   gaussian       Φ̄(t)
  ///   exponential    e^{-t}
  ///   alpha_concave  (1 - αt)^{1/α}  for t > 1/α (η is undefined below)
  double tail(double t) const;
  /// Whether H_η(t) is finite for this t.
  bool tail_defined(double t) const;
};

}  // namespace epigauss
