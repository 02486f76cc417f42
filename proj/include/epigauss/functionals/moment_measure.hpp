#pragma once

#include <optional>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

struct Atom {
  Vec location;
  double mass = 0.0;
};

/// Uniform bins over a box in gradient space; mass in row-major order.
struct Histogram {
  BoxDomain bounds;
  std::vector<std::size_t> shape;
  std::vector<double> mass;
  Vec bin_center(std::size_t linear) const;
};

/// μ_γ(φ, ·): the push-forward of c_{n+1} e^{-φ²/2} e^{-|x|²/2} dx under ∇φ.
struct MomentMeasureEstimate {
  enum class Kind { atomic, histogram };
  Kind kind = Kind::atomic;
  std::size_t n = 0;
  std::vector<Atom> atoms;
  std::optional<Histogram> bins;
  double total_mass = 0.0;
};

struct HistogramSpec {
  std::optional<BoxDomain> bounds;  // default: observed gradient range padded 5%
  std::size_t bins_per_axis = 64;
};

/// Atomic for PL functions (one atom per piece slope, tied nodes split
/// equally), a histogram for the other representations.
MomentMeasureEstimate moment_measure(const ConvexFunction& f, const QuadratureConfig& cfg, const HistogramSpec& spec = {});

/// Mass of each piece's argmax cell, followed by the total as the last entry.
std::vector<double> piece_masses(const PLConvexFunction& f, const QuadratureConfig& cfg);

/// Box spanned by ∇φ over the quadrature nodes, each side widened by
/// `pad` times its length (by 0.5 when the range is a point).
BoxDomain gradient_range(const ConvexFunction& f, const QuadratureConfig& cfg, double pad = 0.05);

/// c_{n+1} ∫ e^{-φ²/2} e^{-|x|²/2} dx.
double total_moment_mass(const ConvexFunction& f, const QuadratureConfig& cfg);

}  // namespace epigauss
