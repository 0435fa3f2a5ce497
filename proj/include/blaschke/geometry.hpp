#pragma once

// Convex polyhedra in R^3: half-space intersection, convex hull and the
// scalar/vector measurements used throughout the library.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace blaschke {

using Vec3 = Eigen::Vector3d;

namespace tol {
/// Angle below which two directions are considered the same.
inline constexpr double kMergeAngle = 1e-9;
/// Relative (to body diameter) tolerance for vertex dedup and facet merging.
inline constexpr double kRelative = 1e-9;
}  // namespace tol

/// A unit vector. Construction normalizes; the stored vector always has
/// norm 1 within 1e-12.
class Direction {
 public:
  Direction() : v_(0.0, 0.0, 1.0) {}

  /// Normalizes `v`. Throws InvalidArgument for a (near) zero vector. Vectors
  /// already unit to within a few ulps are stored bit-for-bit.
  static Direction from_vector(const Vec3& v);
  static Direction from_xyz(double x, double y, double z) { return from_vector(Vec3(x, y, z)); }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }

  /// Angle in [0, pi], computed stably for nearly (anti)parallel pairs.
  double angle_to(const Direction& other) const;

  Direction operator-() const { return Direction(-v_); }

 private:
  explicit Direction(const Vec3& unit) : v_(unit) {}
  Vec3 v_;
};

/// Half-space description {x : x . n_j <= h_j}.
struct SupportPolyhedron {
  std::vector<Direction> directions;
  std::vector<double> support_numbers;

  std::size_t size() const { return directions.size(); }
};

/// Unordered face pair, always stored with first < second.
struct FacePair {
  std::size_t first;
  std::size_t second;

  FacePair(std::size_t a, std::size_t b) : first(a < b ? a : b), second(a < b ? b : a) {}
  auto operator<=>(const FacePair&) const = default;
};

/// Boundary complex of a bounded convex polyhedron.
///
/// Face j carries `face_normals[j]` and `face_areas[j]`. Faces produced by
/// half-space intersection keep one slot per input direction, so a plane
/// that does not touch the body appears with area 0 and an empty cycle.
struct MeshPolyhedron {
  std::vector<Vec3> vertices;
  /// Vertex cycles, counterclockwise seen from outside.
  std::vector<std::vector<std::size_t>> faces;
  std::vector<Direction> face_normals;
  std::vector<double> face_areas;
  /// Length of the edge shared by two faces; pairs without an edge are absent.
  std::map<FacePair, double> edge_lengths;

  std::size_t face_slots() const { return faces.size(); }
  std::size_t face_count() const;
  std::size_t edge_count() const { return edge_lengths.size(); }
  double edge_length(std::size_t i, std::size_t j) const;
  double total_area() const;
  /// Maximum distance between two vertices.
  double diameter() const;
  Vec3 vertex_centroid() const;
  /// Signed distance of face j's plane from the origin (n_j . x on the face).
  /// Undefined (returns the support value) for empty faces.
  double face_offset(std::size_t j) const;
};

/// Intersection of the half-spaces {x . n_j <= h_j}.
///
/// Throws UnboundedRegion when the directions do not positively span R^3 and
/// DegenerateBody when the intersection has empty interior.
MeshPolyhedron intersect_halfspaces(const SupportPolyhedron& p);

/// Convex hull with coplanar triangles merged into polygonal faces. Output
/// vertices are copied verbatim from `points`, in input order.
MeshPolyhedron convex_hull(std::span<const Vec3> points);

double volume(const MeshPolyhedron& p);
double support_value(const MeshPolyhedron& p, const Direction& d);
Vec3 vector_area_residual(const MeshPolyhedron& p);

/// Half the sum over edges of length times exterior dihedral angle.
double integral_mean_curvature(const MeshPolyhedron& p);

struct Containment {
  bool contained = false;
  /// Translation maximizing the slack margin; feasible when `contained`.
  Vec3 translation = Vec3::Zero();
  /// Optimal slack; negative means no translation fits.
  double margin = 0.0;
  /// Nonnegative weights y over the outer facets with sum(y_i n_i) = 0 and
  /// sum(y_i (h_i - h_inner(n_i))) = margin. When margin < 0 this is a Farkas
  /// certificate of infeasibility.
  std::vector<double> certificate;
};

/// Decides whether some translate of `inner` fits inside `outer`.
Containment contains_by_translation(const MeshPolyhedron& outer, const MeshPolyhedron& inner);

/// Faces sharing an edge (positive length).
std::set<FacePair> face_adjacency(const MeshPolyhedron& p);

MeshPolyhedron translated(const MeshPolyhedron& p, const Vec3& t);
MeshPolyhedron scaled(const MeshPolyhedron& p, double factor);

/// Symmetric Hausdorff distance between the vertex sets after moving both
/// vertex centroids to the origin.
double aligned_vertex_distance(const MeshPolyhedron& a, const MeshPolyhedron& b);

/// Support numbers of every face slot; empty slots get the support value.
std::vector<double> support_numbers(const MeshPolyhedron& p);

/// Checks the closed-convex, Euler and closure invariants. Returns an empty
/// string on success, else a description of the first violation.
std::string check_mesh(const MeshPolyhedron& p);

}  // namespace blaschke
