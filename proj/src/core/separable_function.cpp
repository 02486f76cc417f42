#include "epigauss/core/separable_function.hpp"

#include <algorithm>

#include "epigauss/numerics/error.hpp"

namespace epigauss {

SeparableFunction::SeparableFunction(std::vector<Plq> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorKind::invalid_argument, "separable function needs at least one axis");
}

ExtReal SeparableFunction::eval(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from function");
  ExtReal s = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) s += axes_[k].value(x[k]);
  return s;
}

Vec SeparableFunction::gradient(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from function");
  Vec g(dim());
  for (std::size_t k = 0; k < dim(); ++k) g[k] = axes_[k].derivative(x[k]);
  return g;
}

Vec SeparableFunction::domain_lo() const {
  Vec v(dim());
  for (std::size_t k = 0; k < dim(); ++k) v[k] = axes_[k].lo();
  return v;
}

Vec SeparableFunction::domain_hi() const {
  Vec v(dim());
  for (std::size_t k = 0; k < dim(); ++k) v[k] = axes_[k].hi();
  return v;
}

double SeparableFunction::growth() const {
  // Σ c_k|u_k| ≥ min_k c_k |u|, with equality along the slowest axis.
  double g = Plq::kInf;
  for (const Plq& p : axes_) g = std::min(g, p.growth());
  return g;
}

SeparableFunction SeparableFunction::conjugate() const {
  std::vector<Plq> out;
  for (const Plq& p : axes_) out.push_back(p.conjugate());
  return SeparableFunction(std::move(out));
}

SeparableFunction SeparableFunction::right_scaled(double t) const {
  std::vector<Plq> out;
  for (const Plq& p : axes_) out.push_back(p.right_scaled(t));
  return SeparableFunction(std::move(out));
}

SeparableFunction SeparableFunction::shifted(double k) const {
  std::vector<Plq> out = axes_;
  out[0] = out[0].shifted(k);
  return SeparableFunction(std::move(out));
}

SeparableFunction SeparableFunction::inf_convolution(const SeparableFunction& psi, double t) const {
  if (psi.dim() != dim()) throw Error(ErrorKind::dimension_mismatch, "inf-convolution of functions on different spaces");
  std::vector<Plq> out;
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(axes_[k].inf_convolution(psi.axes_[k], t));
  return SeparableFunction(std::move(out));
}

}  // namespace epigauss
