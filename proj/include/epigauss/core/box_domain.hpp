#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace epigauss {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Closed axis-aligned box [lo, hi] with lo < hi componentwise.
class BoxDomain {
 public:
  BoxDomain() = default;
  BoxDomain(Vec lo, Vec hi);
  /// The cube [-r, r]^n.
  static BoxDomain cube(std::size_t n, double r);

  std::size_t dim() const { return lo_.size(); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

  bool contains(std::span<const double> x) const;
  bool origin_interior() const;
  /// h_B(u) = Σ max(u_k lo_k, u_k hi_k).
  double support(std::span<const double> u) const;

 private:
  Vec lo_, hi_;
};

}  // namespace epigauss
