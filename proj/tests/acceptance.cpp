// Acceptance suite: one PASS/FAIL line per criterion. Arguments select a
// subset by number ("acceptance 4 7"); the exit status is nonzero when any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "epigauss/core/convex_function.hpp"
#include "epigauss/core/measure.hpp"
#include "epigauss/functionals/epigraph.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/spherical.hpp"
#include "epigauss/numerics/gauss_tail.hpp"
#include "epigauss/solver/minkowski.hpp"
#include "epigauss/solver/monge_ampere.hpp"
#include "epigauss/transform/inf_convolution.hpp"
#include "epigauss/transform/legendre.hpp"
#include "epigauss/variation/condition.hpp"
#include "epigauss/variation/first_variation.hpp"

using namespace epigauss;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const QuadratureConfig kCfg{};

ConvexFunction sep(std::vector<Plq> axes) { return SeparableFunction(std::move(axes)); }

PLConvexFunction polygon_indicator(std::size_t sides, double offset) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < sides; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(sides);
    hs.push_back({{std::cos(a), std::sin(a)}, offset});
  }
  return PLConvexFunction({{{0.0, 0.0}, 0.0}}, hs);
}

PLConvexFunction square_indicator() { return polygon_indicator(4, 1.0); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Full-domain functions of class 𝓛 used across criteria.
std::vector<std::pair<std::string, ConvexFunction>> full_domain_set() {
  return {
      {"x^2/2+1", sep({Plq::quadratic(1.0, 0.0, 1.0)})},
      {"|x|+1", PLConvexFunction({{{1.0}, 1.0}, {{-1.0}, 1.0}})},
      {"max(2x,-x+0.5,x/2+0.1)", PLConvexFunction({{{2.0}, 0.0}, {{-1.0}, 0.5}, {{0.5}, 0.1}})},
      {"x^2/2+|x|-1", sep({Plq::quadratic(1.0, 1.0, -1.0)})},
      {"(x1^2+1)+(x2^2/2+|x2|/2)", sep({Plq::quadratic(2.0, 0.0, 1.0), Plq::quadratic(1.0, 0.5, 0.0)})},
      {"|x1|/2+x2^2-0.5", sep({Plq::quadratic(0.0, 0.5, -0.5), Plq::quadratic(2.0, 0.0, 0.0)})},
  };
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& out) {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.6, 2.0);
  double worst = 0.0;
  std::size_t finite = 0, mismatched = 0;
  const auto t0 = Clock::now();
  for (int pair = 0; pair < 50; ++pair) {
    const std::size_t n = pair < 25 ? 1 : 2;
    auto random_pl = [&](std::size_t m) {
      std::vector<AffinePiece> pieces;
      for (std::size_t k = 0; k < m; ++k) {
        if (n == 1) {
          const double s = (k % 2 == 0 ? 1.0 : -1.0) * radius(rng);
          pieces.push_back({{s}, u(rng)});
        } else {
          const double a = 2.0 * kPi * (static_cast<double>(k) + 0.4 * u(rng)) / static_cast<double>(m);
          const double r = radius(rng);
          pieces.push_back({{r * std::cos(a), r * std::sin(a)}, u(rng)});
        }
      }
      return PLConvexFunction(std::move(pieces));
    };
    const PLConvexFunction phi = random_pl(3 + pair % 4), psi = random_pl(3 + (pair / 4) % 4);
    const ConjugateEvaluator lhs(inf_convolution(ConvexFunction{phi}, ConvexFunction{psi}, 1.0));
    for (int q = 0; q < 1000; ++q) {
      Vec y(n);
      for (double& c : y) c = 1.5 * u(rng);
      double want;
      if (n == 1) {
        std::vector<std::pair<double, double>> a, b;
        for (const auto& p : phi.pieces()) a.push_back({p.slope[0], p.intercept});
        for (const auto& p : psi.pieces()) b.push_back({p.slope[0], p.intercept});
        want = oracle::pl_conjugate_1d(a, y[0]) + oracle::pl_conjugate_1d(b, y[0]);
      } else {
        std::vector<oracle::Affine2> a, b;
        for (const auto& p : phi.pieces()) a.push_back({p.slope[0], p.slope[1], p.intercept});
        for (const auto& p : psi.pieces()) b.push_back({p.slope[0], p.slope[1], p.intercept});
        want = oracle::pl_conjugate_2d(a, y[0], y[1]) + oracle::pl_conjugate_2d(b, y[0], y[1]);
      }
      const ExtReal got = lhs(y);
      if (got.is_finite() != std::isfinite(want)) {
        ++mismatched;
        continue;
      }
      if (!got.is_finite()) continue;
      ++finite;
      worst = std::max(worst, std::abs(got.value() - want));
    }
  }
  const double elapsed = seconds_since(t0);
  out.require(worst <= 1e-12, "max error <= 1e-12");
  out.require(mismatched == 0, "finiteness agrees");
  out.require(finite > 10000, "enough finite queries");
  out.require(elapsed < 5.0, "runtime < 5 s");
  out.detail << "50 pairs x 1000 queries, max |(f[]g)* - (f*+g*)| " << fmt(worst) << " over " << finite
             << " finite queries, " << mismatched << " finiteness mismatches, " << fmt(elapsed) << " s";
}

void criterion_2(Outcome& out) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst1 = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(1000), y(1000), v(1000);
    std::vector<ExtReal> ve;
    for (auto& t : x) t = 4.0 * u(rng);
    for (auto& t : y) t = 6.0 * u(rng);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
      v[i] = 0.5 * x[i] * x[i] + 0.3 * std::abs(x[i] + 0.5) + 0.05 * u(rng);
      ve.emplace_back(v[i]);
    }
    const auto fast = llt_1d(x, ve, y);
    for (std::size_t j = 0; j < y.size(); ++j)
      worst1 = std::max(worst1, std::abs(fast[j] - oracle::brute_conjugate_1d(x, v, y[j])));
  }
  double worst2 = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const double a = 0.5 + 0.5 * (u(rng) + 1.0), b = u(rng), c = u(rng);
    const GridFunction f = GridFunction::sample(BoxDomain::cube(2, 1.0), {33, 33}, [&](std::span<const double> x) {
      return a * x[0] * x[0] + 0.5 * x[1] * x[1] + b * x[0] * x[1] * 0.5 + std::abs(x[0] - c) + 0.01 * u(rng);
    });
    const QueryGrid q{BoxDomain::cube(2, 3.0), {33, 33}};
    const GridFunction g = legendre_nd(f, q);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Vec y = g.node(g.unravel(j));
      double best = -INFINITY;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec x = f.node(f.unravel(i));
        best = std::max(best, x[0] * y[0] + x[1] * y[1] - f.values()[i].value());
      }
      worst2 = std::max(worst2, std::abs(g.values()[j].value() - best));
    }
  }
  out.require(worst1 <= 1e-12, "llt_1d within 1e-12");
  out.require(worst2 <= 1e-10, "legendre_nd within 1e-10");
  out.detail << "llt_1d max error " << fmt(worst1) << " (100 x 1000 x 1000), legendre_nd 33x33 max error "
             << fmt(worst2) << " (10 grids)";
}

void criterion_3(Outcome& out) {
  const double g1 = epigraph_volume(sep({Plq()}), kCfg);
  const double g2 = epigraph_volume(sep({Plq(), Plq()}), kCfg);
  const double gi = epigraph_volume(sep({Plq::indicator(-1.0, 1.0)}), kCfg);
  const double want_i = 0.5 * (1.0 - 2.0 * oracle::tail(1.0));
  out.require(std::abs(g1 - 0.5) <= 1e-8 && std::abs(g2 - 0.5) <= 1e-8, "gamma(0) = 1/2");
  out.require(std::abs(gi - want_i) <= 1e-8, "gamma(I) closed form");
  double worst = 0.0;
  for (double v : {0.0, 0.5, 1.0}) {
    const double lib = epigraph_volume(PLConvexFunction({{{1.0}, -v}, {{-1.0}, -v}}), kCfg);
    const double raw = oracle::raw_epigraph_1d([v](double y) { return std::abs(y) - v; }, {0.0});
    worst = std::max(worst, std::abs(lib - raw));
  }
  out.require(worst <= 1e-7, "|y| - v against raw quadrature");
  out.detail << "|gamma(0)-1/2| " << fmt(std::max(std::abs(g1 - 0.5), std::abs(g2 - 0.5))) << ", |gamma(I)-oracle| "
             << fmt(std::abs(gi - want_i)) << ", |y|-v vs raw double integral " << fmt(worst);
}

void criterion_4(Outcome& out) {
  struct Pair {
    std::string name;
    ConvexFunction phi, psi;
    bool box;
  };
  const auto full = full_domain_set();
  std::vector<Pair> pairs{
      {"x^2/2+1 / self", full[0].second, full[0].second, false},
      {"x^2/2+|x|-1 / x^2/2", full[3].second, sep({Plq::quadratic(1.0, 0.0, 0.0)}), false},
      {"max-affine 1-D / x^2/2+|x|-1", full[2].second, full[3].second, false},
      {"2-D separable / self", full[4].second, full[4].second, false},
      {"x1^2+x2^2/2 / |x|^2/2+x1", sep({Plq::quadratic(2.0, 0.0, 0.0), Plq::quadratic(1.0, 0.0, 0.0)}),
       sep({Plq({-Plq::kInf, Plq::kInf}, {QuadPiece{1.0, 1.0, 0.0}}), Plq::quadratic(1.0, 0.0, 0.0)}), false},
      {"2-D separable / (x1^2/2+x1/5)+(x2^2/4+0.3)", full[4].second,
       sep({Plq({-Plq::kInf, Plq::kInf}, {QuadPiece{1.0, 0.2, 0.0}}), Plq::quadratic(0.5, 0.0, 0.3)}), false},
      {"I[-1,1] / self", sep({Plq::indicator(-1.0, 1.0)}), sep({Plq::indicator(-1.0, 1.0)}), true},
      {"x^2/2 on [-1,2] / I[-1,1]", sep({Plq::quadratic(1.0, 0.0, 0.0, -1.0, 2.0)}), sep({Plq::indicator(-1.0, 1.0)}), true},
      {"I square / self", square_indicator(), square_indicator(), true},
  };
  std::size_t full_ok = 0, box_ok = 0;
  double worst = 0.0, slowest = 0.0;
  for (const Pair& p : pairs) {
    const auto t0 = Clock::now();
    const ConditionCertificate cert = check_condition(p.phi, p.psi);
    if (!cert.satisfied) {
      out.require(false, p.name + " certificate: " + cert.reason);
      continue;
    }
    const VariationReport closed = delta_gamma_closed(p.phi, p.psi, kCfg);
    const VariationReport num = delta_gamma_numeric(p.phi, p.psi, default_t_schedule(), kCfg);
    const double r = rel(*num.richardson_value, *closed.closed_form_value);
    const double elapsed = seconds_since(t0);
    slowest = std::max(slowest, elapsed);
    worst = std::max(worst, r);
    const bool ok = r <= 1e-3 && elapsed <= 120.0;
    out.require(ok, p.name + " rel " + fmt(r) + " in " + fmt(elapsed) + " s");
    if (ok) ++(p.box ? box_ok : full_ok);
  }
  out.require(full_ok >= 5 && box_ok >= 2, "at least 5 full-domain and 2 box-domain pairs");
  out.detail << full_ok << " full-domain and " << box_ok << " box-domain pairs agree, worst rel " << fmt(worst)
             << ", slowest pair " << fmt(slowest) << " s";
}

void criterion_5(Outcome& out) {
  auto set = full_domain_set();
  set.erase(set.begin() + 5, set.end());
  set.push_back({"I[-1,1]", sep({Plq::indicator(-1.0, 1.0)})});
  double worst = 0.0;
  for (const auto& [name, f] : set) {
    const double a = delta_gamma_self(f, kCfg), b = delta_gamma_self_boundary(f, kCfg);
    const double r = rel(a, b);
    worst = std::max(worst, r);
    out.require(r <= 1e-4, name + " rel " + fmt(r));
  }
  out.detail << "5 full-domain functions and the interval indicator, worst rel " << fmt(worst);
}

void criterion_6(Outcome& out) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0);
  const auto full = full_domain_set();
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double alpha = ua(rng), beta = ub(rng);
    for (const ConvexFunction& phi : {full[0].second, full[4].second}) {
      const double r = scaling_identity_residual(phi, phi, alpha, beta, kCfg);
      worst = std::max(worst, r);
    }
  }
  out.require(worst <= 1e-6, "residual <= 1e-6");
  out.detail << "10 random (alpha, beta) on a 1-D and a 2-D function, max residual " << fmt(worst);
}

// ½ (2π)^{-1} Σ_edges h_K(ν) ∫_edge e^{-|x|²/2} for a regular polygon with
// the given offset (edges between consecutive halfspace lines).
double polygon_surface_oracle(std::size_t sides, double offset) {
  double total = 0.0;
  for (std::size_t i = 0; i < sides; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(sides);
    const double half = offset * std::tan(kPi / static_cast<double>(sides));
    const double nx = std::cos(a), ny = std::sin(a);
    const double edge = oracle::adaptive_simpson(
        [&](double s) {
          const double x = offset * nx - s * ny, y = offset * ny + s * nx;
          return std::exp(-0.5 * (x * x + y * y));
        },
        -half, half, 1e-15);
    total += offset * edge;
  }
  return 0.5 / (2.0 * kPi) * total;
}

void criterion_7(Outcome& out) {
  const PLConvexFunction sq = square_indicator();
  const double off = std::cos(kPi / 256.0);
  const PLConvexFunction disk = polygon_indicator(256, off);
  const double cs = *delta_gamma_closed(sq, sq, kCfg).closed_form_value;
  const double cd = *delta_gamma_closed(disk, disk, kCfg).closed_form_value;
  const double os = polygon_surface_oracle(4, 1.0), od = polygon_surface_oracle(256, off);
  const double total = spherical_measure(disk, kCfg).total_mass;
  out.require(std::abs(cs - os) <= 1e-5, "square");
  out.require(std::abs(cd - od) <= 1e-5, "256-gon");
  out.require(std::abs(total - 0.5 * std::exp(-0.5)) <= 1e-3, "spherical total");
  out.detail << "square |closed-oracle| " << fmt(std::abs(cs - os)) << ", 256-gon " << fmt(std::abs(cd - od))
             << ", disk spherical total " << total << " (target " << 0.5 * std::exp(-0.5) << ")";
}

void criterion_8(Outcome& out) {
  const auto t0 = Clock::now();
  const ValidatedMeasure mu = validate_measure({1, {{1.0}, {-1.0}}, {1.0, 1.0}});
  const SolverConfig cfg = default_solver_config(1);
  const SolverResult r = solve(mu, cfg);
  const double gamma = constraint_value(r.v, mu, cfg.quadrature);
  const double v_oracle = oracle::single_pair_height();
  const MomentMeasureEstimate m = moment_measure(r.phi, cfg.quadrature);
  const double asym = m.atoms.size() == 2 ? std::abs(m.atoms[0].mass - m.atoms[1].mass) : INFINITY;
  const double elapsed = seconds_since(t0);
  out.require(std::abs(gamma - 0.5) <= 1e-10, "constraint");
  out.require(std::abs(r.v[0] - v_oracle) <= 1e-8, "v* against bisection oracle");
  out.require(asym <= 1e-10, "symmetric atoms");
  out.require(elapsed < 10.0, "runtime < 10 s");
  out.detail << "|gamma-1/2| " << fmt(std::abs(gamma - 0.5)) << ", v* " << r.v[0] << " vs oracle " << v_oracle
             << " (diff " << fmt(std::abs(r.v[0] - v_oracle)) << "), atom asymmetry " << fmt(asym) << ", "
             << fmt(elapsed) << " s";
}

void criterion_9(Outcome& out) {
  const ValidatedMeasure mu = validate_measure({1, {{1.0}, {-1.0}, {2.0}, {-2.0}}, {1.0, 1.0, 0.2, 0.2}});
  const SolverConfig cfg = default_solver_config(1);
  const SolverResult r = solve(mu, cfg);
  const oracle::TwoPairOptimum best = oracle::two_pair_grid_search(1.0, 0.2);
  const double dv = std::max(std::abs(r.v[0] - best.v1), std::abs(r.v[1] - best.v2));
  const double tv = verify_solution(r, mu, cfg.quadrature.refined(2)).tv_distance;
  out.require(r.converged && r.residual <= 1e-3 && r.iterations <= 2000, "residual within 2000 iterations");
  out.require(dv <= 1e-2, "v against grid search");
  out.require(tv <= 2e-3, "TV");
  out.detail << "residual " << fmt(r.residual) << " after " << r.iterations << " iterations, v = (" << r.v[0] << ", "
             << r.v[1] << ") vs oracle (" << best.v1 << ", " << best.v2 << "), max diff " << fmt(dv) << ", TV "
             << fmt(tv);
}

void criterion_10(Outcome& out) {
  const ValidatedMeasure cross = validate_measure({2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}});
  const SolverResult c = solve(cross, default_solver_config(2));
  double spread = 0.0;
  for (double a : c.masses)
    for (double b : c.masses) spread = std::max(spread, std::abs(a - b));
  out.require(c.converged && c.residual <= 1e-3, "cross residual");
  out.require(spread <= 1e-10, "cross masses equal");

  const auto t0 = Clock::now();
  const ValidatedMeasure six = validate_measure(
      {2, {{1.0, 0.0}, {-1.0, 0.0}, {0.3, 1.0}, {-0.3, -1.0}, {-0.8, 0.6}, {0.8, -0.6}}, {1.0, 1.0, 0.7, 0.7, 0.4, 0.4}});
  SolverConfig cfg = default_solver_config(2);
  cfg.residual_tol = 1e-2;
  const SolverResult r = solve(six, cfg);
  const double solve_time = seconds_since(t0);
  const double tv = verify_solution(r, six, cfg.quadrature.refined(2)).tv_distance;
  out.require(r.converged && r.residual <= 1e-2, "six-point residual");
  out.require(solve_time <= 300.0, "six-point within 5 min");
  out.require(tv <= 2e-2, "six-point TV at 513^2");
  out.detail << "cross residual " << fmt(c.residual) << ", mass spread " << fmt(spread) << "; six-point residual "
             << fmt(r.residual) << " after " << r.iterations << " iterations in " << fmt(solve_time)
             << " s at " << cfg.quadrature.points_per_axis << "^2, TV at "
             << cfg.quadrature.refined(2).points_per_axis << "^2 " << fmt(tv);
}

// φ = Σ (cosh y_k − 1) solves g(∇φ) det ∇²φ = c e^{-φ²/2} e^{-|y|²/2} for
// g(x) = c e^{-φ(y)²/2} e^{-|y|²/2} / Π cosh y_k with y_k = asinh x_k.
double cosh_residual(std::size_t n, std::size_t m) {
  const double c = std::pow(2.0 * kPi, -0.5 * static_cast<double>(n + 1));
  const GridFunction phi = GridFunction::sample(BoxDomain::cube(n, 1.0), std::vector<std::size_t>(n, m),
                                                [](std::span<const double> y) {
                                                  double s = 0.0;
                                                  for (double v : y) s += std::cosh(v) - 1.0;
                                                  return s;
                                                });
  auto g = [c](std::span<const double> x) {
    double p = 0.0, r2 = 0.0, det = 1.0;
    for (double v : x) {
      const double y = std::asinh(v);
      p += std::cosh(y) - 1.0;
      r2 += y * y;
      det *= std::cosh(y);
    }
    return c * std::exp(-0.5 * p * p - 0.5 * r2) / det;
  };
  return monge_ampere_residual(phi, g, 1.0).max_residual;
}

void criterion_11(Outcome& out) {
  for (std::size_t n : {1u, 2u}) {
    const std::size_t m1 = 21, m2 = 41, m3 = 81;
    const double h1 = 2.0 / (m1 - 1);
    const double r1 = cosh_residual(n, m1), r2 = cosh_residual(n, m2), r3 = cosh_residual(n, m3);
    const double o1 = std::log2(r1 / r2), o2 = std::log2(r2 / r3);
    out.require(std::min(o1, o2) >= 1.8, std::to_string(n) + "-D order");
    out.detail << n << "-D residuals " << fmt(r1) << " / " << fmt(r2) << " / " << fmt(r3) << " (orders " << fmt(o1)
               << ", " << fmt(o2) << ", C = " << fmt(r1 / (h1 * h1)) << "); ";
  }
}

void criterion_12(Outcome& out) {
  std::vector<std::pair<std::string, ConvexFunction>> set = full_domain_set();
  set.push_back({"0", sep({Plq()})});
  set.push_back({"I[-1,1]", sep({Plq::indicator(-1.0, 1.0)})});
  set.push_back({"x^2/2 on [-1,2]", sep({Plq::quadratic(1.0, 0.0, 0.0, -1.0, 2.0)})});
  set.push_back({"I square", square_indicator()});
  set.push_back({"I 256-gon", polygon_indicator(256, std::cos(kPi / 256.0))});
  set.push_back({"|y|-0.77", PLConvexFunction({{{1.0}, -0.77}, {{-1.0}, -0.77}})});
  double worst_value = 0.0;
  for (const auto& [name, f] : set)
    for (double p : {1.0, 2.0}) {
      const FinitenessAudit a = finiteness_audit(f, p, kCfg);
      out.require(a.finite_nonnegative(), name + " finite and nonnegative");
      out.require(a.within_bound(), name + " value term bound");
      worst_value = std::max(worst_value, a.value_term);
    }
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  const double bound = std::exp(-0.5);
  std::size_t violations = 0;
  for (int k = 0; k < 1000000; ++k) {
    const double t = k == 0 ? 1.0 : u(rng);
    if (t * std::exp(-0.5 * t * t) > bound) ++violations;
  }
  out.require(violations == 0, "t e^{-t^2/2} <= e^{-1/2}");
  out.detail << set.size() << " functions audited (p = 1, 2), largest value term " << fmt(worst_value)
             << " <= " << fmt(bound) << "; 10^6 samples, " << violations << " bound violations";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Fenchel algebra exactness", criterion_1},
      {"fast transform vs brute force", criterion_2},
      {"Gaussian volume closed forms", criterion_3},
      {"first variation: numeric vs closed form", criterion_4},
      {"dual self-variation formulas", criterion_5},
      {"scaling identity", criterion_6},
      {"indicator reduction and spherical measure", criterion_7},
      {"solver, 1-D single pair", criterion_8},
      {"solver, 1-D two pairs", criterion_9},
      {"solver, 2-D", criterion_10},
      {"Monge-Ampere residual order", criterion_11},
      {"finiteness and bound audits", criterion_12},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      criteria[k].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", id, out.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                out.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
