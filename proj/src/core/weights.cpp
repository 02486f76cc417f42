#include "epigauss/core/weights.hpp"

#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {

void WeightPair::validate(std::size_t n) const {
  if (omega == Omega::power && !(q > 0.0)) throw Error(ErrorKind::invalid_argument, "power weight needs q > 0");
  if (eta == Eta::alpha_concave) {
    const double lo = -1.0 / static_cast<double>(n);
    if (!(alpha > lo && alpha < 0.0))
      throw Error(ErrorKind::invalid_argument,
                  "alpha-concave weight needs " + std::to_string(lo) + " < alpha < 0, got " + std::to_string(alpha));
  }
}

double WeightPair::omega_at(std::span<const double> x) const {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  switch (omega) {
    case Omega::gaussian: return std::pow(2.0 * kPi, -0.5 * static_cast<double>(x.size())) * std::exp(-0.5 * r2);
    case Omega::unit: return 1.0;
    case Omega::power: return std::pow(std::sqrt(r2), q - static_cast<double>(x.size()));
  }
  return 0.0;
}

bool WeightPair::tail_defined(double t) const {
  return eta != Eta::alpha_concave || 1.0 - alpha * t > 0.0;
}

double WeightPair::tail(double t) const {
  switch (eta) {
    case Eta::gaussian: return gauss_tail(t);
    case Eta::exponential: return std::exp(-t);
    case Eta::alpha_concave:
      if (!tail_defined(t)) throw Error(ErrorKind::divergent_tail, "alpha-concave tail diverges at t = " + std::to_string(t));
      return std::pow(1.0 - alpha * t, 1.0 / alpha);
  }
  return 0.0;
}

}  // namespace epigauss
