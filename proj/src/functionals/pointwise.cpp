#include "epigauss/functionals/pointwise.hpp"

#include <array>
#include <cmath>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

constexpr double kTieTol = 1e-12;

class FunctionKernel final : public RegionKernel {
 public:
  FunctionKernel(const ConvexFunction& f, std::size_t outputs, const PointIntegrand& integrand)
      : f_(f), outputs_(outputs), integrand_(integrand), n_(dimension(f)) {
    if (n_ > 3) throw Error(ErrorKind::unsupported_dimension, "integration supports n <= 3");
  }

  std::size_t outputs() const override { return outputs_; }

  void begin_box(std::span<const AxisRule> axes) override {
    in_box_ = true;
    if (const auto* s = std::get_if<SeparableFunction>(&f_)) {
      values_.assign(n_, {});
      slopes_.assign(n_, {});
      for (std::size_t k = 0; k < n_; ++k) {
        const Plq& p = s->axis(k);
        for (double x : axes[k].nodes) {
          const ExtReal v = p.value(x);
          values_[k].push_back(v.value());
          slopes_[k].push_back(v.is_finite() && !p.single_point() ? p.derivative(x) : 0.0);
        }
      }
    } else if (const auto* pl = std::get_if<PLConvexFunction>(&f_); pl && n_ == 1) {
      const double c = 0.5 * (axes[0].nodes.front() + axes[0].nodes.back());
      const std::array<double, 1> xc{c};
      pl->max_affine(xc, &box_piece_);
    }
  }

  void begin_triangles() override { in_box_ = false; }

  void accumulate(const QuadNode& node, std::span<double> acc) const override {
    std::array<double, 3> grad{};
    PointData d;
    d.x = node.x;
    d.weight = node.weight;
    d.grad = std::span<const double>(grad.data(), n_);

    if (std::get_if<SeparableFunction>(&f_)) {
      double v = 0.0;
      for (std::size_t k = 0; k < n_; ++k) {
        v += values_[k][node.index[k]];
        grad[k] = slopes_[k][node.index[k]];
      }
      if (!std::isfinite(v)) return;
      d.value = v;
      integrand_(d, acc);
      return;
    }

    if (const auto* pl = std::get_if<PLConvexFunction>(&f_)) {
      if (!pl->in_domain(node.x, 1e-12)) return;
      if (n_ == 1 && in_box_) {
        const AffinePiece& p = pl->pieces()[box_piece_];
        grad[0] = p.slope[0];
        d.value = p.slope[0] * node.x[0] + p.intercept;
        d.active = std::span<const std::size_t>(&box_piece_, 1);
        integrand_(d, acc);
        return;
      }
      thread_local std::vector<std::size_t> ties;
      pl->active_pieces(node.x, kTieTol, ties);
      const AffinePiece& p = pl->pieces()[ties.front()];
      double v = p.intercept;
      for (std::size_t k = 0; k < n_; ++k) {
        grad[k] = p.slope[k];
        v += p.slope[k] * node.x[k];
      }
      d.value = v;
      d.active = ties;
      integrand_(d, acc);
      return;
    }

    const auto& g = std::get<GridFunction>(f_);
    const ExtReal v = g.eval(node.x);
    if (v.is_infinite()) return;
    const auto gr = g.interpolated_gradient(node.x);
    if (!gr) return;
    for (std::size_t k = 0; k < n_; ++k) grad[k] = (*gr)[k];
    d.value = v.value();
    integrand_(d, acc);
  }

 private:
  const ConvexFunction& f_;
  std::size_t outputs_;
  const PointIntegrand& integrand_;
  std::size_t n_;
  bool in_box_ = true;
  std::size_t box_piece_ = 0;
  std::vector<std::vector<double>> values_, slopes_;
};

}  // namespace

std::vector<double> integrate_function(const ConvexFunction& f, const QuadratureConfig& cfg, std::size_t outputs,
                                       const PointIntegrand& integrand) {
  cfg.validate_points();
  FunctionKernel kernel(f, outputs, integrand);
  return integrate_region(domain_region(f, cfg.truncation_radius), cfg, kernel);
}

}  // namespace epigauss
