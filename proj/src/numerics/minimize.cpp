#include "epigauss/numerics/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

constexpr double kInvPhi = 0.6180339887498948482045868;
constexpr double kGrowthCap = 1e9;

// Walks outward from x0 in direction `dir` until f stops decreasing; the
// returned point is a valid end for a convex minimisation bracket.
double grow_bracket(const std::function<double(double)>& f, double x0, double f0, double dir) {
  double step = 1.0;
  double prev = f0;
  while (true) {
    const double x = x0 + dir * step;
    const double fx = f(x);
    if (!(fx < prev) || step > kGrowthCap) return x;
    prev = fx;
    step *= 2.0;
  }
}

}  // namespace

ScalarMinimum minimize_convex(const std::function<double(double)>& f, double lo, double hi, double start) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw Error(ErrorKind::invalid_argument, "empty minimisation interval");
  ScalarMinimum best{lo, std::numeric_limits<double>::infinity()};
  auto consider = [&](double x, double fx) {
    if (fx < best.value) best = {x, fx};
  };
  if (lo == hi) {
    consider(lo, f(lo));
    return best;
  }

  const double x0 = std::clamp(start, lo, hi);
  const double f0 = f(x0);
  consider(x0, f0);
  double a = std::isinf(lo) ? grow_bracket(f, x0, f0, -1.0) : lo;
  double b = std::isinf(hi) ? grow_bracket(f, x0, f0, +1.0) : hi;
  consider(a, f(a));
  consider(b, f(b));

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 300; ++it) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= 4.0 * eps * scale) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) throw Error(ErrorKind::bracket_failure, "bisection bracket does not straddle the root");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace epigauss
