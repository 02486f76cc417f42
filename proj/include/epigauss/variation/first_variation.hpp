#pragma once

#include <optional>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/numerics/quadrature.hpp"
#include "epigauss/transform/inf_convolution.hpp"
#include "epigauss/variation/condition.hpp"

namespace epigauss {

struct VariationReport {
  std::vector<double> t_schedule;
  std::vector<double> raw_quotients;
  std::optional<double> richardson_value;
  std::optional<double> closed_form_value;
  double boundary_term = 0.0;
  double bulk_term = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  /// Quotients shrink in magnitude of successive differences (the O(t)
  /// model behind the extrapolation looks right).
  bool quotients_settle = true;
  std::size_t clamped_gradients = 0;
  bool unchecked = false;
  std::optional<ConditionCertificate> certificate;

  /// Fills abs_error and rel_error when both sides are present.
  void compare();
};

/// t_k = 0.1 / 2^k, k = 0..6.
std::vector<double> default_t_schedule();

/// Forward quotients (γ(φ □ ψt) − γ(φ)) / t and Richardson extrapolation of
/// the last two under an O(t) error model.
VariationReport delta_gamma_numeric(const ConvexFunction& phi, const ConvexFunction& psi,
                                    const std::vector<double>& t_schedule, const QuadratureConfig& cfg,
                                    const SamplingGrid& sampling = {});

struct ClosedFormOptions {
  bool unchecked = false;  // skip the certificate
  std::optional<QueryGrid> condition_grid;
};

/// Bulk term c ∫ ψ*(∇φ) e^{-φ²/2} e^{-|x|²/2} plus boundary term
/// c ∫_{∂D_φ} h_{D_ψ}(ν) e^{-|x|²/2} √(2π) Φ̄(φ). Requires φ ∈ 𝓛 with
/// o ∈ int D_φ and a satisfied certificate (condition_violated otherwise).
VariationReport delta_gamma_closed(const ConvexFunction& phi, const ConvexFunction& psi, const QuadratureConfig& cfg,
                                   const ClosedFormOptions& options = {});

/// n γ(φ) − c (∫ |x|² e^{-|x|²/2} √(2π) Φ̄(φ) + ∫ φ e^{-|x|²/2} e^{-φ²/2}).
double delta_gamma_self(const ConvexFunction& phi, const QuadratureConfig& cfg);

/// c ∫_{∂D_φ} ⟨x, ν⟩ e^{-|x|²/2} √(2π) Φ̄(φ) + c ∫ φ*(∇φ) e^{-φ²/2} e^{-|x|²/2},
/// with φ*(∇φ(x)) = ⟨x, ∇φ(x)⟩ − φ(x).
double delta_gamma_self_boundary(const ConvexFunction& phi, const QuadratureConfig& cfg);

/// |δγ(φ, ψα − β) − α δγ(φ, ψ) − β c ∫ e^{-|x|²/2} e^{-φ²/2}| in closed form.
double scaling_identity_residual(const ConvexFunction& phi, const ConvexFunction& psi, double alpha, double beta,
                                 const QuadratureConfig& cfg);

struct BermanReport {
  double residual = 0.0;  // max over used samples
  std::size_t used = 0;
  std::size_t skipped = 0;  // not differentiable, or ψ* infinite at ∇φ
};

/// max_x |d/dt (φ □ ψt)(x)|_{0+} + ψ*(∇φ(x))| with Richardson-extrapolated
/// forward quotients.
BermanReport berman_derivative_residual(const ConvexFunction& phi, const ConvexFunction& psi,
                                        const std::vector<Vec>& samples, const std::vector<double>& t_schedule,
                                        const SamplingGrid& sampling = {});

/// Richardson value for an O(t) error model from the last two quotients.
double richardson(const std::vector<double>& t, const std::vector<double>& q);

}  // namespace epigauss
