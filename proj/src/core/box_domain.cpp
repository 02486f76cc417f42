#include "epigauss/core/box_domain.hpp"

#include <algorithm>
#include <cmath>

#include "epigauss/numerics/error.hpp"

namespace epigauss {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "dot of vectors with different lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

BoxDomain::BoxDomain(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.empty()) throw Error(ErrorKind::dimension_mismatch, "box bounds differ in length");
  for (std::size_t k = 0; k < lo_.size(); ++k)
    if (!(lo_[k] < hi_[k])) throw Error(ErrorKind::invalid_argument, "box needs lo < hi on every axis");
}

BoxDomain BoxDomain::cube(std::size_t n, double r) { return BoxDomain(Vec(n, -r), Vec(n, r)); }

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from box");
  for (std::size_t k = 0; k < dim(); ++k)
    if (x[k] < lo_[k] || x[k] > hi_[k]) return false;
  return true;
}

bool BoxDomain::origin_interior() const {
  for (std::size_t k = 0; k < dim(); ++k)
    if (!(lo_[k] < 0.0 && 0.0 < hi_[k])) return false;
  return true;
}

double BoxDomain::support(std::span<const double> u) const {
  if (u.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "direction dimension differs from box");
  double s = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) s += std::max(u[k] * lo_[k], u[k] * hi_[k]);
  return s;
}

}  // namespace epigauss
