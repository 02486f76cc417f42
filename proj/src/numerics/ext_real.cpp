#include "epigauss/numerics/ext_real.hpp"

#include <cmath>
#include <ostream>

#include "epigauss/numerics/error.hpp"

namespace epigauss {

ExtReal::ExtReal(double v) : v_(v) {
  if (std::isnan(v)) throw Error(ErrorKind::invalid_argument, "NaN is not an extended real");
  if (v == -std::numeric_limits<double>::infinity())
    throw Error(ErrorKind::invalid_argument, "-inf is outside R ∪ {+inf}");
}

ExtReal operator+(ExtReal a, ExtReal b) noexcept {
  if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
  return ExtReal(ExtReal::Raw{}, a.v_ + b.v_);
}

ExtReal min(ExtReal a, ExtReal b) noexcept { return a < b ? a : b; }
ExtReal max(ExtReal a, ExtReal b) noexcept { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtReal v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

}  // namespace epigauss
