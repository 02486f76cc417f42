#pragma once

#include <span>
#include <vector>

#include "epigauss/core/box_domain.hpp"
#include "epigauss/core/plq.hpp"
#include "epigauss/numerics/ext_real.hpp"

namespace epigauss {

/// φ(x) = Σ_k f_k(x_k) with each f_k a convex piecewise linear-quadratic
/// profile. Conjugation, inf-convolution and right scaling act axis by axis
/// and stay exact, which keeps first-variation numerics free of grid error.
class SeparableFunction {
 public:
  explicit SeparableFunction(std::vector<Plq> axes);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<Plq>& axes() const { return axes_; }
  const Plq& axis(std::size_t k) const { return axes_[k]; }

  ExtReal eval(std::span<const double> x) const;
  Vec gradient(std::span<const double> x) const;
  /// Domain bounds per axis; entries may be infinite.
  Vec domain_lo() const;
  Vec domain_hi() const;
  double growth() const;

  SeparableFunction conjugate() const;
  SeparableFunction right_scaled(double t) const;
  SeparableFunction shifted(double k) const;
  SeparableFunction inf_convolution(const SeparableFunction& psi, double t) const;

 private:
  std::vector<Plq> axes_;
};

}  // namespace epigauss
