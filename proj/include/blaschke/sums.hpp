#pragma once

#include "blaschke/geometry.hpp"
#include "blaschke/solver.hpp"

namespace blaschke {

/// Minkowski sum P + Q as the hull of all pairwise vertex sums.
MeshPolyhedron minkowski_sum(const MeshPolyhedron& p, const MeshPolyhedron& q);

/// Blaschke sum P # Q: the body whose face areas per direction are the sums
/// of the operands' face areas, reconstructed by continuation.
MeshPolyhedron blaschke_sum_bodies(const MeshPolyhedron& p, const MeshPolyhedron& q,
                                   const ContinuationConfig& cfg = {});

}  // namespace blaschke
