#pragma once

#include <cstddef>

#include "epigauss/numerics/ext_real.hpp"

namespace epigauss {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;

/// Upper tail of the standard normal, (2π)^{-1/2} ∫_t^∞ e^{-s²/2} ds.
/// Relative error below 1e-13 for |t| ≤ 12; gauss_tail(+∞) = 0.
double gauss_tail(double t) noexcept;
double gauss_tail(ExtReal t) noexcept;

/// Standard normal density (2π)^{-1/2} e^{-t²/2}.
double gauss_density(double t) noexcept;

/// c_{n+1} = (2π)^{-(n+1)/2}, the normalisation of the Gaussian measure on R^{n+1}.
double gauss_constant(std::size_t n_plus_one) noexcept;

}  // namespace epigauss
