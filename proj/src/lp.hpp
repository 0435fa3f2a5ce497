#pragma once

#include <span>
#include <vector>

#include "blaschke/geometry.hpp"

namespace blaschke::detail {

struct MarginSolution {
  Vec3 point = Vec3::Zero();
  double margin = 0.0;
  /// Optimal dual weights: y >= 0, sum y = 1, sum y_i n_i = 0.
  std::vector<double> weights;
};

/// Maximizes s subject to n_i . x + s <= b_i over (x, s).
///
/// Solved through its dual, min b . y s.t. sum y_i n_i = 0, sum y_i = 1,
/// y >= 0, with a two-phase tableau simplex. Throws UnboundedRegion when the
/// dual is infeasible (origin outside the hull of the normals).
MarginSolution maximize_margin(std::span<const Vec3> normals, std::span<const double> rhs);

}  // namespace blaschke::detail
