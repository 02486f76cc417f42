#include "epigauss/solver/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/pointwise.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

struct ShiftEval {
  double gamma = 0.0;
  double mass = 0.0;
};

// γ(φ₀*) and the total moment mass in one pass.
ShiftEval evaluate_shift(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg) {
  const PLConvexFunction f = phi_star_of(v, mu);
  const auto sums = integrate_function(f, cfg, 2, [](const PointData& d, std::span<double> acc) {
    double r2 = 0.0;
    for (double x : d.x) r2 += x * x;
    const double gx = std::exp(-0.5 * r2);
    acc[0] += d.weight * gx * gauss_tail(d.value);
    acc[1] += d.weight * gx * std::exp(-0.5 * d.value * d.value);
  });
  const std::size_t n = mu.measure.n;
  return {std::pow(2.0 * kPi, -0.5 * static_cast<double>(n)) * sums[0], gauss_constant(n + 1) * sums[1]};
}

std::vector<double> shifted(const std::vector<double>& v, double t) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] + t, 0.0);
  return out;
}

double normalized_residual(const std::vector<double>& w, const std::vector<double>& m, double* tv = nullptr) {
  const double tw = std::accumulate(w.begin(), w.end(), 0.0);
  const double tm = std::accumulate(m.begin(), m.end(), 0.0);
  double worst = 0.0, sum = 0.0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const double d = std::abs(w[p] / tw - m[p] / tm);
    worst = std::max(worst, d);
    sum += d;
  }
  if (tv) *tv = 0.5 * sum;
  return worst;
}

double objective(const std::vector<double>& w, const std::vector<double>& v) {
  return std::inner_product(w.begin(), w.end(), v.begin(), 0.0);
}

}  // namespace

void SolverConfig::validate() const {
  quadrature.validate();
  if (!(step_size > 0.0)) throw Error(ErrorKind::invalid_argument, "step_size must be positive");
  if (max_iterations == 0) throw Error(ErrorKind::invalid_argument, "max_iterations must be positive");
  if (!(residual_tol > 0.0) || !(bisection_tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerances must be positive");
}

QuadratureConfig solver_quadrature(std::size_t n) {
  QuadratureConfig q;
  q.points_per_axis = n == 1 ? 4097 : (n == 2 ? 257 : 65);
  return q;
}

SolverConfig default_solver_config(std::size_t n) {
  SolverConfig c;
  c.quadrature = solver_quadrature(n);
  return c;
}

PLConvexFunction phi_star_of(const std::vector<double>& v, const ValidatedMeasure& mu) {
  if (v.size() != mu.pair_count())
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(mu.pair_count()) + " pair heights, got " + std::to_string(v.size()));
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < mu.measure.points.size(); ++i) pieces.push_back({mu.measure.points[i], -v[mu.pair_of[i]]});
  return PLConvexFunction(std::move(pieces));
}

double constraint_value(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg) {
  return evaluate_shift(v, mu, cfg).gamma;
}

Projection project_shift(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg, double tol) {
  for (double x : v)
    if (!(x >= 0.0)) throw Error(ErrorKind::invalid_argument, "pair heights must be nonnegative");
  Projection out;
  auto F = [&](double t) {
    ++out.evaluations;
    ShiftEval e = evaluate_shift(shifted(v, t), mu, cfg);
    e.gamma -= 0.5;
    return e;
  };

  const double vmax = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  double lo = -vmax, hi = 10.0;
  ShiftEval flo = F(lo), fhi = F(hi);
  for (int k = 0; k < 60 && flo.gamma > 0.0; ++k) {
    // Only reachable with heights already at zero; the support function of a
    // spanning measure gives γ < ½.
    lo -= 10.0 * std::pow(2.0, k);
    flo = F(lo);
  }
  for (int k = 0; k < 60 && fhi.gamma < 0.0; ++k) {
    hi += 10.0 * std::pow(2.0, k);
    fhi = F(hi);
  }
  if (flo.gamma > 0.0 || fhi.gamma < 0.0)
    throw Error(ErrorKind::bracket_failure, "could not bracket the constraint root; check the quadrature settings");

  double t = std::abs(flo.gamma) < std::abs(fhi.gamma) ? lo : hi;
  ShiftEval ft = t == lo ? flo : fhi;
  if (t == lo ? flo.gamma == 0.0 : fhi.gamma == 0.0) {
    out.v = shifted(v, t);
    out.shift = t;
    out.constraint = 0.5;
    return out;
  }
  // Start from t = 0 when it lies in the bracket: an already feasible v
  // then returns at once.
  if (lo < 0.0 && 0.0 < hi) {
    t = 0.0;
    ft = F(0.0);
  }
  for (int it = 0; it < 200; ++it) {
    if (std::abs(ft.gamma) <= tol) break;
    if (ft.gamma < 0.0) lo = t; else hi = t;
    double next = ft.mass > 0.0 ? t - ft.gamma / ft.mass : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * (1.0 + std::abs(t))) break;
    t = next;
    ft = F(t);
  }
  out.v = shifted(v, t);
  out.shift = t;
  out.constraint = ft.gamma + 0.5;
  return out;
}

std::vector<double> constraint_gradient(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg) {
  const auto pieces = piece_masses(phi_star_of(v, mu), cfg);
  std::vector<double> m(mu.pair_count(), 0.0);
  for (std::size_t i = 0; i < mu.measure.points.size(); ++i) m[mu.pair_of[i]] += pieces[i];
  return m;
}

SolverResult solve(const ValidatedMeasure& mu, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t pairs = mu.pair_count();
  const std::vector<double> w = mu.pair_weights();
  const double total_w = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> v = cfg.v_init ? *cfg.v_init : std::vector<double>(pairs, 0.0);
  if (v.size() != pairs) throw Error(ErrorKind::dimension_mismatch, "v_init needs one height per pair");

  Projection proj = project_shift(v, mu, cfg.quadrature, cfg.bisection_tol);
  v = proj.v;
  std::vector<double> m = constraint_gradient(v, mu, cfg.quadrature);
  double residual = normalized_residual(w, m);
  double obj = objective(w, v);
  double constraint = proj.constraint;

  SolverResult res{v, phi_star_of(v, mu), m, 0.0, residual, constraint, 0, false, {residual}, {obj}};
  double step = cfg.step_size;
  const double max_step = 64.0 * cfg.step_size;
  std::size_t it = 0;
  while (it < cfg.max_iterations && residual > cfg.residual_tol) {
    ++it;
    const double tm = std::accumulate(m.begin(), m.end(), 0.0);
    std::vector<double> trial(pairs);
    for (std::size_t p = 0; p < pairs; ++p) trial[p] = std::max(v[p] - step * (w[p] / total_w - m[p] / tm), 0.0);
    Projection tp = project_shift(trial, mu, cfg.quadrature, cfg.bisection_tol);
    const double tobj = objective(w, tp.v);
    if (tobj > obj + 1e-14 * (1.0 + std::abs(obj))) {
      step *= 0.5;
      res.residual_history.push_back(residual);
      res.objective_history.push_back(obj);
      if (step < 1e-14) break;
      continue;
    }
    v = tp.v;
    constraint = tp.constraint;
    obj = tobj;
    m = constraint_gradient(v, mu, cfg.quadrature);
    residual = normalized_residual(w, m);
    res.residual_history.push_back(residual);
    res.objective_history.push_back(obj);
    step = std::min(1.5 * step, max_step);
  }

  res.v = v;
  res.phi = phi_star_of(v, mu);
  res.masses = m;
  res.lambda = total_w / std::accumulate(m.begin(), m.end(), 0.0);
  res.residual = residual;
  res.constraint_value = constraint;
  res.iterations = it;
  res.converged = residual <= cfg.residual_tol;
  return res;
}

VerificationReport verify_solution(const SolverResult& result, const ValidatedMeasure& mu, const QuadratureConfig& cfg) {
  VerificationReport rep;
  const std::vector<double> w = mu.pair_weights();
  rep.masses = constraint_gradient(result.v, mu, cfg);
  rep.residual = normalized_residual(w, rep.masses, &rep.tv_distance);
  rep.lambda = std::accumulate(w.begin(), w.end(), 0.0) / std::accumulate(rep.masses.begin(), rep.masses.end(), 0.0);
  rep.constraint_value = constraint_value(result.v, mu, cfg);
  return rep;
}

}  // namespace epigauss
