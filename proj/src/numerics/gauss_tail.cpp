#include "epigauss/numerics/gauss_tail.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace epigauss {
namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257389615890312154517;
constexpr double kInvSqrtPi = 0.564189583547756286948079451560772586;
constexpr double kSqrtHalf = 0.707106781186547524400844362104849039;

// erf(x) for 0 <= x <~ 2.2 from the positive-term series
//   erf(x) = 2/√π e^{-x²} Σ_k (2x²)^k x / (2k+1)!!
// which has no cancellation.
double erf_series(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= two_x2 / (2.0 * k + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * std::exp(-x * x) * sum;
}

// erfc(x) for x >~ 2 from the Laplace continued fraction
//   erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int j = 1; j < 500; ++j) {
    const double a = 0.5 * j;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return kInvSqrtPi * std::exp(-x * x) / f;
}

}  // namespace

double gauss_tail(double t) noexcept {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t == std::numeric_limits<double>::infinity()) return 0.0;
  if (t == -std::numeric_limits<double>::infinity()) return 1.0;
  if (t < 0.0) return 1.0 - gauss_tail(-t);
  const double x = t * kSqrtHalf;
  if (t < 3.0) return 0.5 * (1.0 - erf_series(x));
  if (t > 40.0) return 0.0;
  return 0.5 * erfc_continued_fraction(x);
}

double gauss_tail(ExtReal t) noexcept { return gauss_tail(t.value()); }

double gauss_density(double t) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double gauss_constant(std::size_t n_plus_one) noexcept {
  return std::pow(2.0 * kPi, -0.5 * static_cast<double>(n_plus_one));
}

}  // namespace epigauss
