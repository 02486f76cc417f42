#include "epigauss/variation/first_variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epigauss/functionals/epigraph.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/pointwise.hpp"
#include "epigauss/functionals/spherical.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void check_schedule(const std::vector<double>& t) {
  if (t.size() < 2) throw Error(ErrorKind::invalid_argument, "t schedule needs at least two values");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw Error(ErrorKind::invalid_argument, "t schedule values must be positive");
    if (i > 0 && !(t[i] < t[i - 1])) throw Error(ErrorKind::unsorted_input, "t schedule must decrease");
  }
}

}  // namespace

void VariationReport::compare() {
  if (!richardson_value || !closed_form_value) return;
  abs_error = std::abs(*richardson_value - *closed_form_value);
  rel_error = abs_error / std::max(std::abs(*closed_form_value), 1e-300);
}

std::vector<double> default_t_schedule() {
  std::vector<double> t;
  for (int k = 0; k <= 6; ++k) t.push_back(0.1 / std::pow(2.0, k));
  return t;
}

double richardson(const std::vector<double>& t, const std::vector<double>& q) {
  if (t.size() != q.size() || t.size() < 2) throw Error(ErrorKind::invalid_argument, "Richardson needs two quotients");
  const std::size_t k = t.size() - 1;
  const double r = t[k - 1] / t[k];
  return (r * q[k] - q[k - 1]) / (r - 1.0);
}

VariationReport delta_gamma_numeric(const ConvexFunction& phi, const ConvexFunction& psi,
                                    const std::vector<double>& t_schedule, const QuadratureConfig& cfg,
                                    const SamplingGrid& sampling) {
  check_schedule(t_schedule);
  if (dimension(phi) != dimension(psi)) throw Error(ErrorKind::dimension_mismatch, "phi and psi differ in dimension");
  VariationReport rep;
  rep.t_schedule = t_schedule;
  const double g0 = epigraph_volume(phi, cfg);
  for (double t : t_schedule) {
    const ConvexFunction ft = inf_convolution(phi, psi, t, sampling);
    rep.raw_quotients.push_back((epigraph_volume(ft, cfg) - g0) / t);
  }
  for (std::size_t i = 2; i < rep.raw_quotients.size(); ++i) {
    const double d1 = std::abs(rep.raw_quotients[i - 1] - rep.raw_quotients[i - 2]);
    const double d2 = std::abs(rep.raw_quotients[i] - rep.raw_quotients[i - 1]);
    if (d2 > d1 + 1e-12) rep.quotients_settle = false;
  }
  rep.richardson_value = richardson(rep.t_schedule, rep.raw_quotients);
  return rep;
}

VariationReport delta_gamma_closed(const ConvexFunction& phi, const ConvexFunction& psi, const QuadratureConfig& cfg,
                                   const ClosedFormOptions& options) {
  const std::size_t n = dimension(phi);
  if (dimension(psi) != n) throw Error(ErrorKind::dimension_mismatch, "phi and psi differ in dimension");
  VariationReport rep;
  rep.unchecked = options.unchecked;
  if (!options.unchecked) {
    if (!origin_interior(phi)) throw Error(ErrorKind::condition_violated, "the origin is not interior to dom phi");
    if (!in_class_L(phi)) throw Error(ErrorKind::condition_violated, "phi is not of class L");
    const ConditionCertificate cert = check_condition(phi, psi, options.condition_grid);
    rep.certificate = cert;
    if (!cert.satisfied) throw Error(ErrorKind::condition_violated, "FYZ certificate failed: " + cert.reason);
  }

  const ConjugateEvaluator psi_star(psi);
  const double c = gauss_constant(n + 1);
  std::vector<double> by_piece;
  if (const auto* pl = std::get_if<PLConvexFunction>(&phi))
    for (const AffinePiece& p : pl->pieces()) by_piece.push_back(psi_star(p.slope).value());

  const auto sums = integrate_function(phi, cfg, 1, [&](const PointData& d, std::span<double> acc) {
    const double dens = std::exp(-0.5 * (squared_norm(d.x) + d.value * d.value));
    if (dens == 0.0) return;
    double h = 0.0;
    if (!d.active.empty()) {
      for (std::size_t i : d.active) h += by_piece[i];
      h /= static_cast<double>(d.active.size());
    } else {
      h = psi_star(d.grad).value();
    }
    acc[0] += d.weight * h * dens;
  });
  rep.bulk_term = c * sums[0];
  rep.clamped_gradients = psi_star.clamped();
  rep.boundary_term = boundary_integral(phi, cfg, [&](const Face& f) { return domain_support(psi, f.normal); });
  rep.closed_form_value = rep.bulk_term + rep.boundary_term;
  return rep;
}

double delta_gamma_self(const ConvexFunction& phi, const QuadratureConfig& cfg) {
  const std::size_t n = dimension(phi);
  const auto sums = integrate_function(phi, cfg, 3, [](const PointData& d, std::span<double> acc) {
    const double r2 = squared_norm(d.x);
    const double gx = std::exp(-0.5 * r2);
    acc[0] += d.weight * gx * gauss_tail(d.value);
    acc[1] += d.weight * r2 * gx * kSqrt2Pi * gauss_tail(d.value);
    acc[2] += d.weight * d.value * gx * std::exp(-0.5 * d.value * d.value);
  });
  const double gamma = std::pow(2.0 * kPi, -0.5 * static_cast<double>(n)) * sums[0];
  return static_cast<double>(n) * gamma - gauss_constant(n + 1) * (sums[1] + sums[2]);
}

double delta_gamma_self_boundary(const ConvexFunction& phi, const QuadratureConfig& cfg) {
  const std::size_t n = dimension(phi);
  const double c = gauss_constant(n + 1);
  const auto sums = integrate_function(phi, cfg, 1, [](const PointData& d, std::span<double> acc) {
    double conj = -d.value;
    for (std::size_t k = 0; k < d.x.size(); ++k) conj += d.x[k] * d.grad[k];
    acc[0] += d.weight * conj * std::exp(-0.5 * (squared_norm(d.x) + d.value * d.value));
  });
  double boundary = 0.0;
  if (!full_domain(phi)) {
    if (n >= 3) throw Error(ErrorKind::unsupported_dimension, "boundary terms support n <= 2");
    for (const Face& face : boundary_faces(phi, cfg.truncation_radius))
      boundary += integrate_face(face, cfg, [&](std::span<const double> x) {
        return dot(x, face.normal) * std::exp(-0.5 * squared_norm(x)) * kSqrt2Pi * gauss_tail(evaluate(phi, x));
      });
  }
  return c * (sums[0] + boundary);
}

double scaling_identity_residual(const ConvexFunction& phi, const ConvexFunction& psi, double alpha, double beta,
                                 const QuadratureConfig& cfg) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "scaling identity needs alpha > 0");
  const ConvexFunction tilde = shift(right_scale(psi, alpha), -beta);
  const double lhs = *delta_gamma_closed(phi, tilde, cfg).closed_form_value;
  const double base = *delta_gamma_closed(phi, psi, cfg).closed_form_value;
  return std::abs(lhs - alpha * base - beta * total_moment_mass(phi, cfg));
}

BermanReport berman_derivative_residual(const ConvexFunction& phi, const ConvexFunction& psi,
                                        const std::vector<Vec>& samples, const std::vector<double>& t_schedule,
                                        const SamplingGrid& sampling) {
  check_schedule(t_schedule);
  const std::size_t n = dimension(phi);
  const ConjugateEvaluator psi_star(psi);
  std::vector<ConvexFunction> conv;
  for (double t : t_schedule) conv.push_back(inf_convolution(phi, psi, t, sampling));

  BermanReport rep;
  std::vector<std::size_t> ties;
  for (const Vec& x : samples) {
    if (x.size() != n) throw Error(ErrorKind::dimension_mismatch, "sample dimension differs from phi");
    const ExtReal f0 = evaluate(phi, x);
    if (f0.is_infinite()) {
      ++rep.skipped;
      continue;
    }
    if (const auto* pl = std::get_if<PLConvexFunction>(&phi)) {
      pl->active_pieces(x, 1e-9, ties);
      if (ties.size() > 1) {
        ++rep.skipped;
        continue;
      }
    }
    Vec g;
    try {
      g = gradient_at(phi, x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_differentiable_here) throw;
      ++rep.skipped;
      continue;
    }
    const ExtReal target = psi_star(g);
    if (target.is_infinite()) {
      ++rep.skipped;
      continue;
    }
    std::vector<double> q;
    bool finite = true;
    for (std::size_t i = 0; i < t_schedule.size(); ++i) {
      const ExtReal ft = evaluate(conv[i], x);
      if (ft.is_infinite()) {
        finite = false;
        break;
      }
      q.push_back((ft.value() - f0.value()) / t_schedule[i]);
    }
    if (!finite) {
      ++rep.skipped;
      continue;
    }
    rep.residual = std::max(rep.residual, std::abs(richardson(t_schedule, q) + target.value()));
    ++rep.used;
  }
  if (rep.used == 0) rep.residual = kInf;
  return rep;
}

}  // namespace epigauss
