#pragma once

#include <limits>
#include <vector>

#include "epigauss/numerics/ext_real.hpp"

namespace epigauss {

/// a x²/2 + b x + c
struct QuadPiece {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double value(double x) const { return (0.5 * a * x + b) * x + c; }
  double slope(double x) const { return a * x + b; }
};

/// Convex piecewise linear-quadratic function of one variable. Piece i lives
/// on [breaks[i], breaks[i+1]]; the function is +∞ outside [lo, hi]. The end
/// breaks may be infinite. A one-point domain is stored as breaks {p, p}.
class Plq {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  /// The zero function on R.
  Plq();
  Plq(std::vector<double> breaks, std::vector<QuadPiece> pieces);

  /// (k2/2) x² + a|x| + k restricted to [lo, hi].
  static Plq quadratic(double k2, double a, double k, double lo = -kInf, double hi = kInf);
  /// max_i(s_i x + b_i) restricted to [lo, hi].
  static Plq max_affine(const std::vector<double>& slopes, const std::vector<double>& intercepts,
                        double lo = -kInf, double hi = kInf);
  /// k on [lo, hi], +∞ elsewhere (lo == hi allowed).
  static Plq indicator(double lo, double hi, double k = 0.0);

  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  bool single_point() const { return breaks_.front() == breaks_.back(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<QuadPiece>& pieces() const { return pieces_; }

  ExtReal value(double x) const;
  /// Right derivative (left derivative at hi). Requires lo < hi.
  double derivative(double x) const;
  /// Interior breakpoints, where the second derivative may jump.
  std::vector<double> kinks() const;
  /// liminf f(x)/|x| as |x| → ∞; +∞ when the domain is bounded.
  double growth() const;

  Plq conjugate() const;
  /// x ↦ t f(x/t).
  Plq right_scaled(double t) const;
  /// x ↦ s f(x).
  Plq multiplied(double s) const;
  Plq shifted(double k) const;
  Plq operator+(const Plq& other) const;
  /// f □ (g t) = (f* + t g*)*.
  Plq inf_convolution(const Plq& g, double t) const;

 private:
  std::size_t piece_at(double x) const;
  void simplify();

  std::vector<double> breaks_;
  std::vector<QuadPiece> pieces_;
};

}  // namespace epigauss
