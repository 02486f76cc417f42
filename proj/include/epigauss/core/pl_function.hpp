#pragma once

#include <optional>
#include <span>
#include <vector>

#include "epigauss/core/box_domain.hpp"
#include "epigauss/core/plq.hpp"
#include "epigauss/core/polygon.hpp"
#include "epigauss/numerics/ext_real.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

struct AffinePiece {
  Vec slope;
  double intercept = 0.0;
};

/// {x : ⟨normal, x⟩ ≤ offset}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// max_i(⟨a_i, x⟩ + b_i) on the intersection of the halfspaces, +∞ elsewhere.
class PLConvexFunction {
 public:
  PLConvexFunction(std::vector<AffinePiece> pieces, std::vector<Halfspace> domain = {});

  std::size_t dim() const { return dim_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::vector<Halfspace>& domain() const { return domain_; }
  bool full_domain() const { return domain_.empty(); }

  bool in_domain(std::span<const double> x, double tol = 1e-12) const;
  ExtReal eval(std::span<const double> x) const;
  /// max_i(⟨a_i, x⟩ + b_i) ignoring the domain; `which` receives the lowest
  /// maximising index.
  double max_affine(std::span<const double> x, std::size_t* which = nullptr) const;
  /// All pieces within rel_tol·max(1, |max|) of the maximum.
  void active_pieces(std::span<const double> x, double rel_tol, std::vector<std::size_t>& out) const;
  /// Slope of the lowest-index active piece.
  Vec gradient(std::span<const double> x) const;

  /// Interval domain for n = 1 (ends may be infinite).
  Interval interval_domain() const;
  /// Domain ∩ [-r, r]² for n = 2, edges tagged by halfspace index.
  Polygon polygon_domain(double radius) const;
  /// Whether the domain is bounded (n ≤ 2).
  bool bounded_domain() const;

  /// Exact 1-D profile (n = 1 only).
  Plq to_plq() const;

  PLConvexFunction right_scaled(double t) const;
  PLConvexFunction shifted(double k) const;

  /// Membership in class 𝓛 for a full domain: the origin is interior to the
  /// convex hull of the slopes. Bounded domains are always in 𝓛.
  bool in_class_L() const;
  /// min over unit directions of the recession function max_i ⟨a_i, u⟩
  /// (sampled on 3600 directions in 2-D; exact in 1-D).
  double recession_minimum() const;

 private:
  std::size_t dim_ = 0;
  std::vector<AffinePiece> pieces_;
  std::vector<Halfspace> domain_;
};

}  // namespace epigauss
