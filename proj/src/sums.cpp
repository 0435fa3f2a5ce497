#include "blaschke/sums.hpp"

#include "blaschke/herisson.hpp"

namespace blaschke {

MeshPolyhedron minkowski_sum(const MeshPolyhedron& p, const MeshPolyhedron& q) {
  std::vector<Vec3> points;
  points.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& v : p.vertices)
    for (const auto& w : q.vertices) points.push_back(v + w);
  return convex_hull(points);
}

MeshPolyhedron blaschke_sum_bodies(const MeshPolyhedron& p, const MeshPolyhedron& q, const ContinuationConfig& cfg) {
  const Herisson sum = blaschke_add(herisson_of_mesh(p), herisson_of_mesh(q));
  return continuation_solve(sum, cfg).mesh;
}

}  // namespace blaschke
