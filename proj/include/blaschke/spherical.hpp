#pragma once

#include <vector>

#include "blaschke/geometry.hpp"

namespace blaschke {

/// Domain D on the unit sphere bounded by minor great-circle arcs between
/// consecutive vertices, listed counterclockwise seen from outside (D lies to
/// the left). An empty vertex list denotes the whole sphere.
struct SphericalPolygon {
  std::vector<Vec3> vertices;
};

/// Throws InvalidPolygon if vertices are not unit, consecutive vertices are
/// equal or antipodal, or the boundary crosses itself.
void validate_polygon(const SphericalPolygon& poly);

struct SphericalIdentityTerms {
  /// 2 * integral over D of the position vector.
  Vec3 area_term = Vec3::Zero();
  /// Boundary integral of the outward conormal (tangent to the sphere).
  Vec3 boundary_term = Vec3::Zero();

  Vec3 residual() const { return area_term + boundary_term; }
};

/// Evaluates both sides of 2 * int_D N dsigma + int_{dD} n ds = 0 by
/// quadrature. The area integral uses recursive 4-way subdivision of a fan
/// triangulation to depth `refinement`; the boundary integral a composite
/// Gauss rule with 2^refinement panels per arc.
SphericalIdentityTerms spherical_identity_terms(const SphericalPolygon& poly, int refinement);

/// Sum of the two terms above.
Vec3 spherical_identity_residual(const SphericalPolygon& poly, int refinement);

}  // namespace blaschke
