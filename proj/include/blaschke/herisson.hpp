#pragma once

// Herissons: finite sets of unit directions with positive areas whose vector
// sum vanishes. For a convex polyhedron these are its face normals and face
// areas, i.e. its (discrete) surface area measure.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blaschke/geometry.hpp"

namespace blaschke {

struct HerissonEntry {
  Direction direction;
  double area = 0.0;
};

class Herisson {
 public:
  const std::vector<HerissonEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const HerissonEntry& operator[](std::size_t i) const { return entries_[i]; }

  std::vector<Direction> directions() const;
  std::vector<double> areas() const;
  double total_area() const;
  /// sum_j F_j n_j.
  Vec3 closure_residual() const;
  /// Euclidean norm of the area change applied by closure repair (0 if none).
  double closure_correction() const { return correction_; }

  /// Index of the entry whose direction lies within `angle` of `d`.
  std::optional<std::size_t> find(const Direction& d, double angle = tol::kMergeAngle) const;

 private:
  friend Herisson validate_herisson(std::span<const HerissonEntry>);
  friend Herisson blaschke_add(const Herisson&, const Herisson&);
  friend Herisson blaschke_scale(const Herisson&, double);

  Herisson() = default;

  std::vector<HerissonEntry> entries_;
  double correction_ = 0.0;
};

/// Checks positivity, distinctness and rank, then the closure identity. A
/// residual up to 1e-4 of the total area is repaired by the least-squares
/// projection of the areas onto sum F_j n_j = 0.
Herisson validate_herisson(std::span<const HerissonEntry> raw);

/// Face normals and areas of the non-empty faces.
Herisson herisson_of_mesh(const MeshPolyhedron& p);

/// Union of direction sets; coinciding directions have their areas summed.
Herisson blaschke_add(const Herisson& a, const Herisson& b);

/// Multiplies every area by t > 0 (the body scales by sqrt(t)).
Herisson blaschke_scale(const Herisson& h, double t);

/// Deterministic random herisson with k directions spread over the sphere.
Herisson random_herisson(int k, std::uint64_t seed);

/// Common ratio F_b / F_a when both herissons have the same directions and
/// proportional areas (per-direction ratios within `rel_tol`).
std::optional<double> homothety_ratio(const Herisson& a, const Herisson& b, double rel_tol = 1e-6);

/// Whether every direction of `small` occurs in `large` with at least the
/// same area (minus `slack`). On failure, returns the offending index.
std::optional<std::size_t> dominance_violation(const Herisson& small, const Herisson& large, double slack);

}  // namespace blaschke
