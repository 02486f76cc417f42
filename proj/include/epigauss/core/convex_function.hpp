#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "epigauss/core/box_domain.hpp"
#include "epigauss/core/grid_function.hpp"
#include "epigauss/core/pl_function.hpp"
#include "epigauss/core/separable_function.hpp"
#include "epigauss/numerics/quadrature.hpp"

namespace epigauss {

using ConvexFunction = std::variant<GridFunction, PLConvexFunction, SeparableFunction>;

std::size_t dimension(const ConvexFunction& f);
ExtReal evaluate(const ConvexFunction& f, std::span<const double> x);
/// ∇f(x): exact for PL and separable forms, interpolated for grids.
Vec gradient_at(const ConvexFunction& f, std::span<const double> x);

/// liminf f(x)/|x|; +∞ for bounded domains.
double growth_rate(const ConvexFunction& f);
bool in_class_L(const ConvexFunction& f);
/// Whether o lies in the interior of the effective domain.
bool origin_interior(const ConvexFunction& f);
/// Whether the effective domain is all of R^n.
bool full_domain(const ConvexFunction& f);

/// h_{D_f}(u), +∞ when the domain is unbounded in direction u.
double domain_support(const ConvexFunction& f, std::span<const double> u);

ConvexFunction right_scale(const ConvexFunction& f, double t);
ConvexFunction shift(const ConvexFunction& f, double k);

/// The separable form when one exists exactly (separable inputs and 1-D PL).
std::optional<SeparableFunction> as_separable(const ConvexFunction& f);

/// Integration region for dom f ∩ [-r, r]^n, split where f has kinks when
/// the representation exposes them. For 1-D PL functions each box lies in a
/// single linearity interval.
Region domain_region(const ConvexFunction& f, double radius);

/// A piece of ∂D_f: a point (n = 1) or a segment from a to b (n = 2) with
/// outward unit normal. `splits` are segment parameters in (0, 1) where f
/// restricted to the face may have kinks.
struct Face {
  Vec a, b;
  Vec normal;
  std::vector<double> splits;
};

/// The faces of ∂D_f inside [-r, r]^n; truncation edges are not faces.
/// Empty for full-domain functions. Throws unsupported_dimension for n ≥ 3
/// with a nonempty boundary.
std::vector<Face> boundary_faces(const ConvexFunction& f, double radius);

using Evaluator = std::function<ExtReal(std::span<const double>)>;

/// |f*(∇f(x)) + f(x) − ⟨x, ∇f(x)⟩| at a grid node, with the grid gradient.
double fenchel_young_residual(const GridFunction& f, const Evaluator& f_star, std::span<const std::size_t> node);

/// ∫_F g over a face with the quadrature spacing of cfg (n = 2) or g(a) (n = 1).
double integrate_face(const Face& face, const QuadratureConfig& cfg, const ScalarField& g);

}  // namespace epigauss
