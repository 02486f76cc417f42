#include "epigauss/functionals/spherical.hpp"

#include <cmath>

#include "epigauss/numerics/error.hpp"
#include "epigauss/numerics/gauss_tail.hpp"

namespace epigauss {
namespace {

double face_density_integral(const ConvexFunction& f, const Face& face, const QuadratureConfig& cfg) {
  const double c = gauss_constant(dimension(f) + 1) * kSqrt2Pi;
  return c * integrate_face(face, cfg, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::exp(-0.5 * r2) * gauss_tail(evaluate(f, x));
  });
}

}  // namespace

SphericalMeasureEstimate spherical_measure(const ConvexFunction& f, const QuadratureConfig& cfg) {
  SphericalMeasureEstimate est;
  est.n = dimension(f);
  if (full_domain(f)) {
    est.full_domain = true;
    return est;
  }
  if (est.n >= 3) throw Error(ErrorKind::unsupported_dimension, "spherical measure supports n <= 2");
  for (const Face& face : boundary_faces(f, cfg.truncation_radius)) {
    const double m = face_density_integral(f, face, cfg);
    est.atoms.push_back({face.normal, m});
    est.total_mass += m;
  }
  return est;
}

double boundary_integral(const ConvexFunction& f, const QuadratureConfig& cfg, const std::function<double(const Face&)>& h) {
  if (full_domain(f)) return 0.0;
  if (dimension(f) >= 3) throw Error(ErrorKind::unsupported_dimension, "boundary integrals support n <= 2");
  double total = 0.0;
  for (const Face& face : boundary_faces(f, cfg.truncation_radius)) {
    const double m = face_density_integral(f, face, cfg);
    if (m == 0.0) continue;
    total += h(face) * m;
  }
  return total;
}

}  // namespace epigauss
