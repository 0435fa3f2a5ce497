#pragma once

#include <array>
#include <span>
#include <vector>

#include "blaschke/geometry.hpp"

namespace blaschke::detail {

struct HullTriangle {
  std::array<int, 3> v;  // counterclockwise seen from outside
  Vec3 normal;           // unit, outward
  double offset;         // normal . x on the plane
};

/// Incremental hull; points closer than `eps` above a facet are treated as
/// lying on it. Throws DegenerateBody when the points are (nearly) coplanar,
/// judged against `flat_tol`.
std::vector<HullTriangle> triangulated_hull(std::span<const Vec3> points, double eps, double flat_tol);

/// Bounding-box diagonal, a cheap stand-in for the diameter when choosing
/// tolerances.
double extent(std::span<const Vec3> points);

}  // namespace blaschke::detail
