#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/functionals/epigraph.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/spherical.hpp"
#include "epigauss/io/json_io.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/parallel.hpp"
#include "epigauss/solver/minkowski.hpp"
#include "epigauss/solver/monge_ampere.hpp"
#include "epigauss/transform/inf_convolution.hpp"
#include "epigauss/transform/legendre.hpp"
#include "epigauss/variation/condition.hpp"
#include "epigauss/variation/first_variation.hpp"

using namespace epigauss;
using io::Json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;  // a verification threshold was missed
constexpr int kInputError = 2;   // bad files, invalid measures, unsupported inputs
constexpr int kConditionViolated = 3;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

struct QuadFlags {
  double radius = 8.0;
  std::size_t points = 513;
  std::string rule = "simpson";

  void add(CLI::App* cmd) {
    cmd->add_option("--radius", radius, "truncation radius R of [-R,R]^n")->capture_default_str();
    cmd->add_option("--points", points, "quadrature nodes per axis")->capture_default_str();
    cmd->add_option("--rule", rule, "simpson | trapezoid")
        ->check(CLI::IsMember({"simpson", "trapezoid"}))
        ->capture_default_str();
  }
  QuadratureConfig config() const {
    QuadratureConfig cfg{radius, points, rule == "simpson" ? QuadratureRule::simpson : QuadratureRule::trapezoid};
    cfg.validate();
    return cfg;
  }
};

std::string describe(const QuadratureConfig& cfg) {
  return "R=" + num(cfg.truncation_radius) + " points=" + std::to_string(cfg.points_per_axis) +
         " rule=" + (cfg.rule == QuadratureRule::simpson ? "simpson" : "trapezoid");
}

void emit_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << '\n';
  else
    io::write_text_file(path, j.dump(2) + "\n");
}

// Min/max of the finite samples and the convexity audit of a grid.
void summarize(const GridFunction& g, const std::string& label) {
  double lo = INFINITY, hi = -INFINITY;
  std::size_t infinite = 0;
  for (const ExtReal& v : g.values()) {
    if (v.is_infinite()) {
      ++infinite;
      continue;
    }
    lo = std::min(lo, v.value());
    hi = std::max(hi, v.value());
  }
  const ConvexityAudit audit = g.audit_convexity(1e-9);
  std::cout << label << ": min " << num(lo) << "  max " << num(hi) << "  +inf nodes " << infinite << '\n';
  std::cout << "convexity audit: " << audit.checks << " checks, " << audit.violations << " violations";
  if (audit.violations) std::cout << " (worst deficit " << num(audit.worst) << ")";
  std::cout << '\n';
}

void summarize(const ConvexFunction& f, const std::string& label) {
  if (const auto* g = std::get_if<GridFunction>(&f)) return summarize(*g, label);
  if (const auto* pl = std::get_if<PLConvexFunction>(&f))
    std::cout << label << ": piecewise linear, " << pl->pieces().size() << " pieces, " << pl->domain().size()
              << " halfspaces\n";
  else
    std::cout << label << ": separable, " << dimension(f) << " axes\n";
  if (dimension(f) <= 2) summarize(to_grid(f, SamplingGrid{}), label + " sampled on [-8,8]^n");
}

std::optional<QueryGrid> query_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                                    const std::vector<std::size_t>& shape, std::size_t n) {
  if (lo.empty() && hi.empty() && shape.empty()) return std::nullopt;
  if (lo.size() != n || hi.size() != n || shape.size() != n)
    throw Error(ErrorKind::dimension_mismatch, "--lo, --hi and --shape need one entry per axis");
  return QueryGrid{BoxDomain(lo, hi), shape};
}

int run_legendre(const std::string& input, const std::string& output, const std::vector<double>& lo,
                 const std::vector<double>& hi, const std::vector<std::size_t>& shape) {
  const ConvexFunction f = io::read_function_file(input);
  const std::size_t n = dimension(f);
  ConvexFunction out = SeparableFunction({Plq()});
  if (const auto* g = std::get_if<GridFunction>(&f)) {
    const QueryGrid q = query_grid(lo, hi, shape, n).value_or(default_slope_grid(*g));
    out = legendre_nd(*g, q);
  } else if (const auto* pl = std::get_if<PLConvexFunction>(&f)) {
    auto conj = conjugate_of(*pl);
    if (!conj) {
      if (n > 2) throw Error(ErrorKind::unsupported_dimension, "conjugates of PL functions need n <= 2");
      const GridFunction sampled = to_grid(f, SamplingGrid{});
      out = legendre_nd(sampled, query_grid(lo, hi, shape, n).value_or(default_slope_grid(sampled)));
      std::cout << "note: conjugate is not piecewise linear; sampled on [-8,8]^n\n";
    } else {
      out = *conj;
    }
  } else {
    out = std::get<SeparableFunction>(f).conjugate();
  }
  summarize(out, "conjugate");
  io::write_function_file(output, out);
  std::cout << "wrote " << output << '\n';
  return kOk;
}

int run_infconv(const std::string& phi_path, const std::string& psi_path, double t, const std::string& output,
                const SamplingGrid& sampling) {
  const ConvexFunction phi = io::read_function_file(phi_path);
  const ConvexFunction psi = io::read_function_file(psi_path);
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "--t must be positive");
  const ConvexFunction out = inf_convolution(phi, psi, t, sampling);
  summarize(out, "inf-convolution");
  io::write_function_file(output, out);
  std::cout << "wrote " << output << '\n';
  return kOk;
}

WeightPair::Omega parse_omega(const std::string& s) {
  if (s == "unit") return WeightPair::Omega::unit;
  if (s == "power") return WeightPair::Omega::power;
  return WeightPair::Omega::gaussian;
}

WeightPair::Eta parse_eta(const std::string& s) {
  if (s == "exponential") return WeightPair::Eta::exponential;
  if (s == "alpha-concave") return WeightPair::Eta::alpha_concave;
  return WeightPair::Eta::gaussian;
}

int run_gamma(const std::string& input, const std::string& omega, const std::string& eta, double q, double alpha,
              const QuadFlags& quad, bool json) {
  const ConvexFunction f = io::read_function_file(input);
  const QuadratureConfig cfg = quad.config();
  WeightPair w{parse_omega(omega), q, parse_eta(eta), alpha};
  w.validate(dimension(f));
  const bool plain = w.omega == WeightPair::Omega::gaussian && w.eta == WeightPair::Eta::gaussian;
  const double value = plain ? epigraph_volume(f, cfg) : weighted_epigraph_volume(f, w, cfg);
  if (json) {
    Json j = {{"volume", io::number(value)},
              {"omega", omega},
              {"eta", eta},
              {"quadrature",
               {{"radius", cfg.truncation_radius},
                {"points", cfg.points_per_axis},
                {"rule", quad.rule}}}};
    if (w.omega == WeightPair::Omega::power) j["q"] = q;
    if (w.eta == WeightPair::Eta::alpha_concave) j["alpha"] = alpha;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (plain ? "gamma_{n+1}" : "weighted volume") << " = " << num(value) << '\n';
    std::cout << "omega=" << omega << " eta=" << eta << "  " << describe(cfg) << '\n';
  }
  return kOk;
}

void print_certificate(const ConditionCertificate& c) {
  std::cout << "certificate: " << (c.satisfied ? "satisfied" : "violated") << "  alpha " << num(c.alpha) << "  beta "
            << num(c.beta) << "  inf psi* " << num(c.inf_psi_star) << "  worst violation "
            << num(c.worst_violation) << '\n';
  if (!c.reason.empty()) std::cout << "reason: " << c.reason << '\n';
}

int run_variation(const std::string& phi_path, const std::string& psi_path, double tol, bool unchecked,
                  const QuadFlags& quad, const std::string& json_path) {
  const ConvexFunction phi = io::read_function_file(phi_path);
  const ConvexFunction psi = io::read_function_file(psi_path);
  const QuadratureConfig cfg = quad.config();

  const ConditionCertificate cert = check_condition(phi, psi);
  print_certificate(cert);
  VariationReport closed;
  try {
    closed = delta_gamma_closed(phi, psi, cfg, ClosedFormOptions{unchecked, std::nullopt});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::condition_violated) throw;
    std::cerr << e.what() << '\n';
    return kConditionViolated;
  }
  VariationReport report = delta_gamma_numeric(phi, psi, default_t_schedule(), cfg);
  report.closed_form_value = closed.closed_form_value;
  report.boundary_term = closed.boundary_term;
  report.bulk_term = closed.bulk_term;
  report.clamped_gradients = closed.clamped_gradients;
  report.unchecked = closed.unchecked;
  report.certificate = cert;
  report.compare();

  std::cout << "t              quotient\n";
  for (std::size_t k = 0; k < report.t_schedule.size(); ++k)
    std::printf("%-14s %s\n", num(report.t_schedule[k]).c_str(), num(report.raw_quotients[k]).c_str());
  std::cout << "richardson   " << num(report.richardson_value.value_or(NAN)) << '\n'
            << "closed form  " << num(report.closed_form_value.value_or(NAN)) << "  (bulk "
            << num(report.bulk_term) << ", boundary " << num(report.boundary_term) << ")\n"
            << "abs error    " << num(report.abs_error) << '\n'
            << "rel error    " << num(report.rel_error) << "  tol " << num(tol) << '\n';
  if (!report.quotients_settle) std::cout << "warning: quotients do not settle; extrapolation is unreliable\n";
  if (report.clamped_gradients)
    std::cout << "warning: " << report.clamped_gradients << " gradients fell outside the conjugate grid\n";
  if (!json_path.empty()) emit_json(io::to_json(report), json_path);
  return report.rel_error <= tol ? kOk : kCheckFailed;
}

int run_moment_measure(const std::string& input, bool spherical, std::size_t bins, const QuadFlags& quad,
                       const std::string& output) {
  const ConvexFunction f = io::read_function_file(input);
  const QuadratureConfig cfg = quad.config();
  if (spherical) {
    const SphericalMeasureEstimate s = spherical_measure(f, cfg);
    if (s.full_domain) std::cout << "notice: the domain is all of R^n; the spherical measure is zero\n";
    for (const SphericalAtom& a : s.atoms) std::cout << "normal " << vec_str(a.normal) << "  mass " << num(a.mass) << '\n';
    std::cout << "total " << num(s.total_mass) << '\n';
    emit_json(io::to_json(s), output);
    return kOk;
  }
  const MomentMeasureEstimate m = moment_measure(f, cfg, HistogramSpec{std::nullopt, bins});
  if (m.kind == MomentMeasureEstimate::Kind::atomic)
    for (const Atom& a : m.atoms) std::cout << "atom " << vec_str(a.location) << "  mass " << num(a.mass) << '\n';
  else
    std::cout << "histogram with " << m.bins->mass.size() << " bins over " << vec_str(m.bins->bounds.lo()) << " - "
              << vec_str(m.bins->bounds.hi()) << '\n';
  std::cout << "total " << num(m.total_mass) << '\n';
  emit_json(io::to_json(m), output);
  return kOk;
}

ValidatedMeasure load_measure(const std::string& path) { return validate_measure(io::measure_from_json(io::read_json_file(path))); }

void print_verification(const VerificationReport& v) {
  std::cout << "verify: tv " << num(v.tv_distance) << "  lambda " << num(v.lambda) << "  constraint "
            << num(v.constraint_value) << "  residual " << num(v.residual) << '\n';
}

struct SolveFlags {
  double step = 0.5;
  std::size_t max_iterations = 2000;
  double residual_tol = 1e-3;
  std::optional<double> tv_tol;
  std::size_t points = 0;  // 0: solver default
  std::size_t refine = 2;
};

int run_solve(const std::string& measure_path, const SolveFlags& flags, const std::string& output,
              const std::string& history) {
  const ValidatedMeasure mu = load_measure(measure_path);
  SolverConfig cfg = default_solver_config(mu.measure.n);
  cfg.step_size = flags.step;
  cfg.max_iterations = flags.max_iterations;
  cfg.residual_tol = flags.residual_tol;
  if (flags.points) cfg.quadrature.points_per_axis = flags.points;
  cfg.validate();

  const SolverResult r = solve(mu, cfg);
  std::cout << (r.converged ? "converged" : "not converged") << " after " << r.iterations << " iterations, residual "
            << num(r.residual) << '\n';
  for (std::size_t p = 0; p < r.v.size(); ++p)
    std::cout << "pair " << p << "  v " << num(r.v[p]) << "  mass " << num(r.masses[p]) << '\n';
  std::cout << "lambda " << num(r.lambda) << "  constraint " << num(r.constraint_value) << '\n';

  const VerificationReport v = verify_solution(r, mu, cfg.quadrature.refined(flags.refine));
  print_verification(v);

  Json j = io::to_json(r);
  j["verification"] = io::to_json(v);
  emit_json(j, output);
  if (!history.empty()) {
    std::ostringstream csv;
    io::write_history_csv(csv, r);
    io::write_text_file(history, csv.str());
  }
  const double tv_tol = flags.tv_tol.value_or(2.0 * cfg.residual_tol);
  return r.converged && v.tv_distance <= tv_tol ? kOk : kCheckFailed;
}

int run_verify(const std::string& measure_path, const std::string& result_path, std::size_t points, double tv_tol,
               const std::string& output) {
  const ValidatedMeasure mu = load_measure(measure_path);
  const SolverResult r = io::solver_result_from_json(io::read_json_file(result_path), mu);
  QuadratureConfig cfg = solver_quadrature(mu.measure.n).refined(2);
  if (points) cfg.points_per_axis = points;
  cfg.validate();
  const VerificationReport v = verify_solution(r, mu, cfg);
  print_verification(v);
  std::cout << describe(cfg) << '\n';
  if (!output.empty()) emit_json(io::to_json(v), output);
  return v.tv_distance <= tv_tol ? kOk : kCheckFailed;
}

// Densities g for the Monge–Ampère residual. `quadratic` and `cosh` make
// φ = |y|²/2 and φ = Σ(cosh y_k − 1) exact solutions for the given τ.
std::function<double(std::span<const double>)> density(const std::string& kind, double tau, std::size_t n) {
  const double c = std::pow(2.0 * M_PI, -0.5 * static_cast<double>(n + 1));
  if (kind == "quadratic")
    return [=](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      const double phi = 0.5 * r2;
      return tau * c * std::exp(-0.5 * phi * phi - 0.5 * r2);
    };
  if (kind == "cosh")
    return [=](std::span<const double> x) {
      double phi = 0.0, r2 = 0.0, det = 1.0;
      for (double v : x) {
        const double y = std::asinh(v);
        phi += std::cosh(y) - 1.0;
        r2 += y * y;
        det *= std::cosh(y);
      }
      return tau * c * std::exp(-0.5 * phi * phi - 0.5 * r2) / det;
    };
  return [](std::span<const double>) { return 1.0; };
}

int run_ma_residual(const std::string& input, const std::string& kind, double tau, const std::string& output) {
  const ConvexFunction f = io::read_function_file(input);
  const auto* g = std::get_if<GridFunction>(&f);
  if (!g) throw Error(ErrorKind::invalid_argument, "ma-residual needs a grid function file");
  const MongeAmpereReport rep = monge_ampere_residual(*g, density(kind, tau, g->dim()), tau);
  std::cout << "max interior residual " << num(rep.max_residual) << "  excluded nodes " << rep.excluded << '\n';
  if (rep.excluded) std::cout << "note: nodes without a finite stencil are not twice differentiable and are skipped\n";
  if (!output.empty()) {
    io::write_function_file(output, rep.field);
    std::cout << "wrote " << output << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian epigraph volumes, first variations and the discrete Minkowski problem"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads (0: hardware concurrency)")->envname("EPIGAUSS_THREADS");

  int status = kOk;
  std::function<int()> action;

  std::string input, output, phi_path, psi_path;
  std::vector<double> lo, hi;
  std::vector<std::size_t> shape;

  auto* legendre = app.add_subcommand("legendre", "conjugate of a function file");
  legendre->add_option("--input", input, "function file")->required()->check(CLI::ExistingFile);
  legendre->add_option("--output", output, "conjugate file")->required();
  legendre->add_option("--lo", lo, "query grid lower corner");
  legendre->add_option("--hi", hi, "query grid upper corner");
  legendre->add_option("--shape", shape, "query grid nodes per axis");
  legendre->callback([&] { action = [&] { return run_legendre(input, output, lo, hi, shape); }; });

  double t = 1.0;
  SamplingGrid sampling;
  auto* infconv = app.add_subcommand("infconv", "inf-convolution phi [] (psi t)");
  infconv->add_option("--phi", phi_path)->required()->check(CLI::ExistingFile);
  infconv->add_option("--psi", psi_path)->required()->check(CLI::ExistingFile);
  infconv->add_option("--t", t, "right-scaling factor of psi")->capture_default_str();
  infconv->add_option("--output", output)->required();
  infconv->add_option("--sample-radius", sampling.radius, "sampling box for non-exact pairs")->capture_default_str();
  infconv->add_option("--sample-points", sampling.points)->capture_default_str();
  infconv->callback([&] { action = [&] { return run_infconv(phi_path, psi_path, t, output, sampling); }; });

  QuadFlags quad;
  std::string omega = "gaussian", eta = "gaussian";
  double q = 1.0, alpha = -0.25;
  bool json = false;
  auto* gamma = app.add_subcommand("gamma", "Gaussian or weighted epigraph volume");
  gamma->add_option("--input", input, "function file")->required()->check(CLI::ExistingFile);
  gamma->add_option("--omega", omega, "gaussian | unit | power")
      ->check(CLI::IsMember({"gaussian", "unit", "power"}))
      ->capture_default_str();
  gamma->add_option("--eta", eta, "gaussian | exponential | alpha-concave")
      ->check(CLI::IsMember({"gaussian", "exponential", "alpha-concave"}))
      ->capture_default_str();
  gamma->add_option("--q", q, "exponent of the power weight |x|^(q-n)")->capture_default_str();
  gamma->add_option("--alpha", alpha, "alpha of the alpha-concave tail")->capture_default_str();
  gamma->add_flag("--json", json);
  quad.add(gamma);
  gamma->callback([&] { action = [&] { return run_gamma(input, omega, eta, q, alpha, quad, json); }; });

  double tol = 1e-3;
  bool unchecked = false;
  std::string json_path;
  auto* variation = app.add_subcommand("variation", "first variation: numeric quotients against the closed form");
  variation->add_option("--phi", phi_path)->required()->check(CLI::ExistingFile);
  variation->add_option("--psi", psi_path)->required()->check(CLI::ExistingFile);
  variation->add_option("--tol", tol, "relative tolerance for the exit code")->capture_default_str();
  variation->add_flag("--unchecked", unchecked, "skip the growth-condition certificate in the closed form");
  variation->add_option("--json", json_path, "write the report as JSON ('-' for stdout)");
  quad.add(variation);
  variation->callback([&] { action = [&] { return run_variation(phi_path, psi_path, tol, unchecked, quad, json_path); }; });

  bool spherical = false;
  std::size_t bins = 64;
  std::string mm_output = "-";
  auto* moment = app.add_subcommand("moment-measure", "moment measure (or spherical measure) of a function");
  moment->add_option("--input", input, "function file")->required()->check(CLI::ExistingFile);
  moment->add_flag("--spherical", spherical, "boundary measure pushed forward by the outer normal");
  moment->add_option("--bins", bins, "histogram bins per axis for non-PL inputs")->capture_default_str();
  moment->add_option("--output", mm_output, "JSON destination ('-' for stdout)")->capture_default_str();
  quad.add(moment);
  moment->callback([&] { action = [&] { return run_moment_measure(input, spherical, bins, quad, mm_output); }; });

  SolveFlags sf;
  std::string measure_path, history;
  double tv_tol_flag = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "discrete Gaussian Minkowski problem");
  solve_cmd->add_option("--measure", measure_path, "measure JSON")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--output", output, "result JSON")->required();
  solve_cmd->add_option("--history", history, "residual-history CSV");
  solve_cmd->add_option("--step", sf.step)->capture_default_str();
  solve_cmd->add_option("--max-iterations", sf.max_iterations)->capture_default_str();
  solve_cmd->add_option("--residual-tol", sf.residual_tol)->capture_default_str();
  auto* tv_opt = solve_cmd->add_option("--tv-tol", tv_tol_flag, "TV bound for the exit code (default 2 x residual-tol)");
  solve_cmd->add_option("--points", sf.points, "quadrature nodes per axis (default depends on n)");
  solve_cmd->add_option("--refine", sf.refine, "verification refinement factor")->capture_default_str();
  solve_cmd->callback([&] {
    if (tv_opt->count()) sf.tv_tol = tv_tol_flag;
    action = [&] { return run_solve(measure_path, sf, output, history); };
  });

  std::string result_path;
  std::size_t verify_points = 0;
  double verify_tv = 2e-3;
  auto* verify = app.add_subcommand("verify", "recompute masses of a solver result at higher resolution");
  verify->add_option("--measure", measure_path, "measure JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--result", result_path, "result JSON from solve")->required()->check(CLI::ExistingFile);
  verify->add_option("--points", verify_points, "quadrature nodes per axis (default: twice the solver's)");
  verify->add_option("--tv-tol", verify_tv)->capture_default_str();
  verify->add_option("--output", output, "report JSON ('-' for stdout)");
  verify->callback([&] { action = [&] { return run_verify(measure_path, result_path, verify_points, verify_tv, output); }; });

  std::string kind = "quadratic";
  double tau = 1.0;
  auto* ma = app.add_subcommand("ma-residual", "Monge-Ampere residual of a grid function");
  ma->add_option("--input", input, "grid function file")->required()->check(CLI::ExistingFile);
  ma->add_option("--density", kind, "g: quadratic | cosh | unit")
      ->check(CLI::IsMember({"quadratic", "cosh", "unit"}))
      ->capture_default_str();
  ma->add_option("--tau", tau)->capture_default_str();
  ma->add_option("--output", output, "residual field as a grid file");
  ma->callback([&] { action = [&] { return run_ma_residual(input, kind, tau, output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (threads) set_thread_count(threads);
  try {
    status = action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::condition_violated ? kConditionViolated : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return status;
}
