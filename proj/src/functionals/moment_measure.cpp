#include "epigauss/functionals/moment_measure.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "epigauss/functionals/pointwise.hpp"
#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

double density(const PointData& d) {
  double r2 = 0.0;
  for (double v : d.x) r2 += v * v;
  return std::exp(-0.5 * (r2 + d.value * d.value));
}

void atomic_min(std::atomic<double>& a, double v) {
  double cur = a.load();
  while (v < cur && !a.compare_exchange_weak(cur, v)) {
  }
}

void atomic_max(std::atomic<double>& a, double v) {
  double cur = a.load();
  while (v > cur && !a.compare_exchange_weak(cur, v)) {
  }
}

}  // namespace

BoxDomain gradient_range(const ConvexFunction& f, const QuadratureConfig& cfg, double pad_ratio) {
  const std::size_t n = dimension(f);
  std::vector<std::atomic<double>> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  integrate_function(f, cfg, 1, [&](const PointData& d, std::span<double>) {
    for (std::size_t k = 0; k < n; ++k) {
      atomic_min(lo[k], d.grad[k]);
      atomic_max(hi[k], d.grad[k]);
    }
  });
  Vec l(n), h(n);
  for (std::size_t k = 0; k < n; ++k) {
    l[k] = lo[k].load();
    h[k] = hi[k].load();
    if (!std::isfinite(l[k])) l[k] = h[k] = 0.0;
    const double pad = pad_ratio * (h[k] - l[k]);
    if (pad > 0.0) {
      l[k] -= pad;
      h[k] += pad;
    } else {
      l[k] -= 0.5;
      h[k] += 0.5;
    }
  }
  return BoxDomain(l, h);
}

Vec Histogram::bin_center(std::size_t linear) const {
  const std::size_t n = shape.size();
  Vec c(n);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t i = linear % shape[k];
    linear /= shape[k];
    const double w = (bounds.hi()[k] - bounds.lo()[k]) / static_cast<double>(shape[k]);
    c[k] = bounds.lo()[k] + (static_cast<double>(i) + 0.5) * w;
  }
  return c;
}

std::vector<double> piece_masses(const PLConvexFunction& f, const QuadratureConfig& cfg) {
  const std::size_t m = f.pieces().size();
  const double c = gauss_constant(f.dim() + 1);
  auto sums = integrate_function(ConvexFunction(f), cfg, m + 1, [m](const PointData& d, std::span<double> acc) {
    const double w = d.weight * density(d);
    const double share = w / static_cast<double>(d.active.size());
    for (std::size_t i : d.active) acc[i] += share;
    acc[m] += w;
  });
  for (double& s : sums) s *= c;
  return sums;
}

double total_moment_mass(const ConvexFunction& f, const QuadratureConfig& cfg) {
  const auto sums = integrate_function(f, cfg, 1, [](const PointData& d, std::span<double> acc) {
    acc[0] += d.weight * density(d);
  });
  return gauss_constant(dimension(f) + 1) * sums[0];
}

MomentMeasureEstimate moment_measure(const ConvexFunction& f, const QuadratureConfig& cfg, const HistogramSpec& spec) {
  MomentMeasureEstimate est;
  est.n = dimension(f);
  if (const auto* pl = std::get_if<PLConvexFunction>(&f)) {
    const auto masses = piece_masses(*pl, cfg);
    est.kind = MomentMeasureEstimate::Kind::atomic;
    for (std::size_t i = 0; i < pl->pieces().size(); ++i) est.atoms.push_back({pl->pieces()[i].slope, masses[i]});
    est.total_mass = masses.back();
    return est;
  }

  if (spec.bins_per_axis == 0) throw Error(ErrorKind::invalid_argument, "histogram needs at least one bin per axis");
  const std::size_t n = est.n;
  const BoxDomain bounds = spec.bounds ? *spec.bounds : gradient_range(f, cfg);
  if (bounds.dim() != n) throw Error(ErrorKind::dimension_mismatch, "histogram bounds dimension differs");
  std::vector<std::size_t> shape(n, spec.bins_per_axis);
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  const double c = gauss_constant(n + 1);
  auto sums = integrate_function(f, cfg, total + 1, [&](const PointData& d, std::span<double> acc) {
    const double w = d.weight * density(d);
    acc[total] += w;
    std::size_t lin = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = (d.grad[k] - bounds.lo()[k]) / (bounds.hi()[k] - bounds.lo()[k]);
      if (!(u >= 0.0 && u <= 1.0)) return;  // outside the bins: counted in the total only
      const auto i = std::min(static_cast<std::size_t>(u * static_cast<double>(shape[k])), shape[k] - 1);
      lin = lin * shape[k] + i;
    }
    acc[lin] += w;
  });
  for (double& s : sums) s *= c;
  est.kind = MomentMeasureEstimate::Kind::histogram;
  est.total_mass = sums.back();
  sums.pop_back();
  est.bins = Histogram{bounds, shape, std::move(sums)};
  for (std::size_t i = 0; i < total; ++i)
    if (est.bins->mass[i] > 0.0) est.atoms.push_back({est.bins->bin_center(i), est.bins->mass[i]});
  return est;
}

}  // namespace epigauss
