#pragma once

#include <optional>
#include <vector>

#include "epigauss/core/measure.hpp"
#include "epigauss/core/pl_function.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

struct SolverConfig {
  QuadratureConfig quadrature;
  double step_size = 0.5;
  std::size_t max_iterations = 2000;
  double residual_tol = 1e-3;
  double bisection_tol = 1e-10;
  std::optional<std::vector<double>> v_init;  // one height per pair; zeros otherwise

  void validate() const;
};

/// Solver defaults: R = 8 with 4097 nodes in 1-D, 257 per axis in 2-D and
/// 65 in 3-D.
QuadratureConfig solver_quadrature(std::size_t n);
SolverConfig default_solver_config(std::size_t n);

/// φ₀*(y) = max_i(⟨x_i, y⟩ − v_{pair(i)}) over the support points.
PLConvexFunction phi_star_of(const std::vector<double>& v, const ValidatedMeasure& mu);

/// γ_{n+1}(φ₀*).
double constraint_value(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg);

struct Projection {
  std::vector<double> v;
  double shift = 0.0;
  double constraint = 0.0;
  std::size_t evaluations = 0;
};

/// Uniform shift v ← max(v + t, 0) with γ(φ₀*) = ½ within `tol`, by
/// Newton steps (the derivative in t is the total moment mass) kept inside
/// a bisection bracket grown geometrically from [−max v, 10].
Projection project_shift(const std::vector<double>& v, const ValidatedMeasure& mu, const QuadratureConfig& cfg,
                         double tol = 1e-10);

/// Argmax-cell masses of φ₀* summed over each ± pair.
std::vector<double> constraint_gradient(const std::vector<double>& v, const ValidatedMeasure& mu,
                                        const QuadratureConfig& cfg);

struct SolverResult {
  std::vector<double> v;
  PLConvexFunction phi;
  std::vector<double> masses;
  double lambda = 0.0;
  double residual = 0.0;
  double constraint_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  std::vector<double> objective_history;
};

/// Projected gradient descent on Σ w_p v_p subject to γ(φ₀*) = ½, stopping
/// once max_p |w_p/|μ| − m_p/Σm| ≤ residual_tol. Returns the last accepted
/// iterate with converged = false when the iteration cap is hit.
SolverResult solve(const ValidatedMeasure& mu, const SolverConfig& cfg);

struct VerificationReport {
  std::vector<double> masses;
  double tv_distance = 0.0;  // ½ Σ |w_p/|μ| − m_p/Σm|
  double lambda = 0.0;
  double constraint_value = 0.0;
  double residual = 0.0;
};

VerificationReport verify_solution(const SolverResult& result, const ValidatedMeasure& mu, const QuadratureConfig& cfg);

}  // namespace epigauss
