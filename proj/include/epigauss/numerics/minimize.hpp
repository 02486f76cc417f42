#pragma once

#include <functional>

namespace epigauss {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
};

/// Golden-section search for a convex (possibly non-smooth) function on
/// [lo, hi]. Infinite ends are replaced by a bracket grown geometrically from
/// `start` until the function stops decreasing. Returns the best point seen.
ScalarMinimum minimize_convex(const std::function<double(double)>& f, double lo, double hi, double start = 0.0);

/// Bisection for an increasing function with f(lo) ≤ 0 ≤ f(hi).
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace epigauss
