#pragma once

#include <optional>
#include <string>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/transform/legendre.hpp"

namespace epigauss {

/// Witness of −∞ < inf ψ* ≤ ψ* ≤ αφ* + β on a query grid.
struct ConditionCertificate {
  double alpha = 1.0;
  double beta = 0.0;
  double inf_psi_star = 0.0;
  bool satisfied = false;
  double worst_violation = 0.0;
  std::string reason;  // why the certificate failed, empty when satisfied
};

/// Gradient range of φ padded by 5% (at least [-1, 1] per axis), 257 nodes
/// in 1-D and 65 per axis otherwise.
QueryGrid default_condition_grid(const ConvexFunction& phi);

/// Scans α over a log grid on [1e-3, 1e3] (then golden refinement), with
/// β(α) = max(ψ* − αφ*) over the grid; keeps the smallest β, then the
/// smallest α. All grids are midpoint-refined (2m − 1 nodes per axis)
/// before use, so the pair is also checked between the requested nodes.
ConditionCertificate check_condition(const ConvexFunction& phi, const ConvexFunction& psi,
                                     std::optional<QueryGrid> grid = std::nullopt);

}  // namespace epigauss
