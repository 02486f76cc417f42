#pragma once

#include <span>
#include <vector>

#include "epigauss/core/box_domain.hpp"
#include "epigauss/core/pl_function.hpp"

namespace epigauss {

/// h(y) = max_i ⟨x_i, y⟩, the support function of conv{x_i}.
double support_function(const std::vector<Vec>& points, std::span<const double> y);

struct Sample {
  Vec x;
  double v = 0.0;
};

/// Greatest convex function below the samples on conv{x_i}, for n ∈ {1, 2}:
/// the lower hull of the lifted points (monotone chain in 1-D, incremental
/// 3-D hull in 2-D). Throws degenerate_input for affinely dependent sites.
PLConvexFunction lower_convex_envelope(const std::vector<Sample>& samples);

}  // namespace epigauss
