#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/core/envelope.hpp"

namespace epigauss {

/// φ*(y_j) = max_i(x_i y_j − v_i) in O(N + M): lower hull of the finite
/// samples, then one pointer sweep over the sorted queries.
/// Throws unsorted_input or all_infinite.
std::vector<double> llt_1d(std::span<const double> x, std::span<const ExtReal> v, std::span<const double> y);

struct QueryGrid {
  BoxDomain domain;
  std::vector<std::size_t> shape;
};

/// Slope box spanned by the finite-difference slopes of f, padded by 10%
/// (±1 when the observed range is degenerate), with f's node counts.
QueryGrid default_slope_grid(const GridFunction& f);

/// Conjugate of grid data on the query grid, one llt_1d sweep per axis.
/// Equals max over all finite nodes of ⟨x, y⟩ − f(x). n ∈ {1, 2}.
GridFunction legendre_nd(const GridFunction& f, const QueryGrid& query);

/// Max of the affine forms ⟨x_i, ·⟩ − v_i on R^n; repeated samples dropped.
PLConvexFunction conjugate_pl(const std::vector<Sample>& samples);

/// Exact conjugate of a PL function when it is again a PL function: full
/// domains (n ≤ 2, slopes affinely spanning) and bounded domains (n ≤ 2).
/// Returns nullopt for the remaining cases.
std::optional<PLConvexFunction> conjugate_of(const PLConvexFunction& f);

/// Pointwise evaluator of f*. Grid inputs are conjugated onto a slope grid
/// (default_slope_grid unless given) and interpolated; queries outside that
/// grid are clamped to it and counted.
class ConjugateEvaluator {
 public:
  explicit ConjugateEvaluator(const ConvexFunction& f, std::optional<QueryGrid> grid = std::nullopt);

  ExtReal operator()(std::span<const double> y) const;
  std::size_t clamped() const { return clamped_->load(); }
  /// The grid used for grid inputs, if any.
  const std::optional<GridFunction>& table() const { return table_; }

 private:
  std::optional<SeparableFunction> separable_;
  std::optional<PLConvexFunction> pl_;
  std::optional<PLConvexFunction> pl_source_;  // LP fallback
  std::optional<GridFunction> table_;
  std::shared_ptr<std::atomic<std::size_t>> clamped_;
};

}  // namespace epigauss
