#pragma once

// Reference computations that share no code with the library: plain
// adaptive Simpson, std::erfc, brute-force maxima and simplex enumeration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline const double kPi = std::acos(-1.0);

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (!(b > a)) return 0.0;
  // Start from 16 panels so narrow features are not skipped.
  double total = 0.0;
  const int panels = 16;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels, hi = a + (b - a) * (k + 1) / panels;
    const double flo = f(lo), fhi = f(hi), fm = f(0.5 * (lo + hi));
    total += simpson_step(f, lo, hi, flo, fm, fhi, (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi), tol / panels, 40);
  }
  return total;
}

/// Φ̄(t) from the C library's erfc.
inline double tail(double t) { return t == kInf ? 0.0 : 0.5 * std::erfc(t / std::sqrt(2.0)); }

/// Φ̄(t) by quadrature of the density on [t, 40].
inline double tail_by_quadrature(double t) {
  return adaptive_simpson([](double s) { return std::exp(-0.5 * s * s); }, t, 40.0, 1e-15) / std::sqrt(2.0 * kPi);
}

/// γ₂ of the epigraph of a 1-D function as the raw double integral
/// (2π)⁻¹ ∫∫_{s ≥ φ(x)} e^{-(x²+s²)/2} ds dx, both integrals by quadrature.
inline double raw_epigraph_1d(const std::function<double(double)>& phi, std::vector<double> breaks, double r = 12.0) {
  breaks.push_back(-r);
  breaks.push_back(r);
  std::sort(breaks.begin(), breaks.end());
  auto inner = [&](double x) {
    const double s0 = phi(x);
    if (s0 == kInf) return 0.0;
    const double lo = std::max(s0, -40.0);
    return std::exp(-0.5 * x * x) *
           adaptive_simpson([](double s) { return std::exp(-0.5 * s * s); }, lo, 40.0, 1e-14);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i] >= -r && breaks[i + 1] <= r) total += adaptive_simpson(inner, breaks[i], breaks[i + 1], 1e-12);
  return total / (2.0 * kPi);
}

/// max_i (x_i y − v_i) by direct enumeration.
inline double brute_conjugate_1d(const std::vector<double>& x, const std::vector<double>& v, double y) {
  double best = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (v[i] != kInf) best = std::max(best, x[i] * y - v[i]);
  return best;
}

struct Affine2 {
  double a0, a1, b;
};

/// Conjugate of max_i(⟨a_i, x⟩ + b_i) on R² at y: the least value of
/// Σλ_i(−b_i) over convex combinations Σλ_i a_i = y, found by enumerating
/// every triangle and segment of slopes. +∞ outside conv{a_i}.
inline double pl_conjugate_2d(const std::vector<Affine2>& f, double y0, double y1, double tol = 1e-12) {
  double best = kInf;
  const std::size_t m = f.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(f[i].a0 - y0) <= tol && std::abs(f[i].a1 - y1) <= tol) best = std::min(best, -f[i].b);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d0 = f[j].a0 - f[i].a0, d1 = f[j].a1 - f[i].a1;
      const double len2 = d0 * d0 + d1 * d1;
      if (len2 > 0.0) {
        const double s = ((y0 - f[i].a0) * d0 + (y1 - f[i].a1) * d1) / len2;
        const double px = f[i].a0 + s * d0 - y0, py = f[i].a1 + s * d1 - y1;
        if (s >= -tol && s <= 1.0 + tol && std::hypot(px, py) <= tol)
          best = std::min(best, -(1.0 - s) * f[i].b - s * f[j].b);
      }
      for (std::size_t k = j + 1; k < m; ++k) {
        const double e0 = f[k].a0 - f[i].a0, e1 = f[k].a1 - f[i].a1;
        const double det = d0 * e1 - d1 * e0;
        if (std::abs(det) < 1e-14) continue;
        const double r0 = y0 - f[i].a0, r1 = y1 - f[i].a1;
        const double l1 = (r0 * e1 - r1 * e0) / det, l2 = (d0 * r1 - d1 * r0) / det;
        if (l1 < -tol || l2 < -tol || l1 + l2 > 1.0 + tol) continue;
        best = std::min(best, -(1.0 - l1 - l2) * f[i].b - l1 * f[j].b - l2 * f[k].b);
      }
    }
  }
  return best;
}

/// Same for n = 1, pieces (a_i, b_i).
inline double pl_conjugate_1d(const std::vector<std::pair<double, double>>& f, double y, double tol = 1e-12) {
  double best = kInf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i].first - y) <= tol) best = std::min(best, -f[i].second);
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double lo = std::min(f[i].first, f[j].first), hi = std::max(f[i].first, f[j].first);
      if (hi - lo <= 0.0 || y < lo - tol || y > hi + tol) continue;
      const double s = (y - f[i].first) / (f[j].first - f[i].first);
      best = std::min(best, -(1.0 - s) * f[i].second - s * f[j].second);
    }
  }
  return best;
}

/// (2π)^{-1/2} ∫ e^{-y²/2} Φ̄(φ(y)) dy for an even 1-D φ given on [0, ∞)
/// with kinks at `breaks` (all ≥ 0).
inline double gamma_even_1d(const std::function<double(double)>& phi_pos, std::vector<double> breaks, double r = 12.0) {
  breaks.push_back(0.0);
  breaks.push_back(r);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += adaptive_simpson([&](double y) { return std::exp(-0.5 * y * y) * tail(phi_pos(y)); }, breaks[i],
                              breaks[i + 1], 1e-15);
  return 2.0 * total / std::sqrt(2.0 * kPi);
}

/// Root of an increasing function by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// v* with γ₂(|y| − v*) = ½ for μ = δ₁ + δ₋₁.
inline double single_pair_height() {
  return bisect([](double v) { return gamma_even_1d([v](double y) { return y - v; }, {}) - 0.5; }, 0.0, 3.0);
}

/// Constrained grid search for μ = w₁(δ₁ + δ₋₁) + w₂(δ₂ + δ₋₂): minimise
/// 2(w₁ env(1) + w₂ env(2)) along γ₂(max(|y| − v₁, 2|y| − v₂)) = ½, where
/// the envelope of the heights is env(2) = v₂ and env(1) = min(v₁, v₂)
/// (1 = ¼·(−2) + ¾·2).
struct TwoPairOptimum {
  double v1, v2, objective;
};

inline TwoPairOptimum two_pair_grid_search(double w1, double w2) {
  auto phi = [](double v1, double v2) {
    return [v1, v2](double y) { return std::max(y - v1, 2.0 * y - v2); };
  };
  auto v2_on_curve = [&](double v1) {
    return bisect(
        [&](double v2) {
          const double kink = std::max(v2 - v1, 0.0);
          return gamma_even_1d(phi(v1, v2), {kink}) - 0.5;
        },
        -2.0, 8.0, 1e-12);
  };
  auto objective = [&](double v1, double v2) { return 2.0 * (w1 * std::min(v1, v2) + w2 * v2); };
  TwoPairOptimum best{0, 0, kInf};
  auto scan = [&](double lo, double hi, double step) {
    for (double v1 = lo; v1 <= hi + 1e-15; v1 += step) {
      const double v2 = v2_on_curve(v1);
      if (v1 < 0.0 || v2 < 0.0) continue;
      const double obj = objective(v1, v2);
      if (obj < best.objective) best = {v1, v2, obj};
    }
  };
  scan(0.0, 2.0, 0.02);
  scan(best.v1 - 0.02, best.v1 + 0.02, 0.0005);
  return best;
}

}  // namespace oracle
