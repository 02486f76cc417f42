#pragma once

#include <array>
#include <vector>

#include "epigauss/core/box_domain.hpp"

namespace epigauss {

/// Finitely supported measure Σ w_i δ_{x_i} on R^n.
struct DiscreteMeasure {
  std::size_t n = 0;
  std::vector<Vec> points;
  std::vector<double> weights;

  double total_mass() const;
};

/// A measure of class 𝔐 in canonical paired order: pair p owns the point
/// indices pairs[p] = {i, j} with x_j = -x_i (i == j for an atom at o).
struct ValidatedMeasure {
  DiscreteMeasure measure;
  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<std::size_t> pair_of;  // point index -> pair index

  std::size_t pair_count() const { return pairs.size(); }
  /// Combined weight of each pair.
  std::vector<double> pair_weights() const;
};

/// Checks positivity, evenness (1e-12 on coordinates and weights) and
/// spanning rank (singular values above 1e-10 of the largest). Duplicate
/// points are merged first. Throws nonpositive_weight, not_even or
/// lower_dimensional naming the offending indices.
ValidatedMeasure validate_measure(const DiscreteMeasure& mu);

}  // namespace epigauss
