#pragma once

// Independent reference computations and fixtures shared by the test binaries.
// Nothing here calls the library's own measurement routines.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blaschke/geometry.hpp"
#include "blaschke/herisson.hpp"
#include "blaschke/io.hpp"
#include "blaschke/solver.hpp"
#include "blaschke/spherical.hpp"

namespace oracle {

using blaschke::Direction;
using blaschke::MeshPolyhedron;
using blaschke::Vec3;

inline std::string data_path(const std::string& name) { return std::string(BLASCHKE_DATA_DIR) + "/" + name; }

inline blaschke::Herisson load_her(const std::string& name) {
  return blaschke::parse_herisson(blaschke::read_text_file(data_path(name)));
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

/// (1/3) sum over fan triangles of (centroid . unit normal) * triangle area.
inline double divergence_volume(const MeshPolyhedron& p) {
  double vol = 0.0;
  for (const auto& face : p.faces) {
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      const Vec3& a = p.vertices[face[0]];
      const Vec3& b = p.vertices[face[i]];
      const Vec3& c = p.vertices[face[i + 1]];
      const Vec3 cr = (b - a).cross(c - a);
      const double area = 0.5 * cr.norm();
      if (area == 0.0) continue;
      vol += ((a + b + c) / 3.0).dot(cr.normalized()) * area;
    }
  }
  return vol / 3.0;
}

/// Face areas by the shoelace formula on each face cycle.
inline std::vector<double> polygon_areas(const MeshPolyhedron& p) {
  std::vector<double> out;
  for (const auto& face : p.faces) {
    Vec3 s = Vec3::Zero();
    for (std::size_t i = 0; i < face.size(); ++i) {
      s += p.vertices[face[i]].cross(p.vertices[face[(i + 1) % face.size()]]);
    }
    out.push_back(0.5 * s.norm());
  }
  return out;
}

/// Face areas of the body with support numbers h, as an Eigen vector.
inline Eigen::VectorXd areas_at(const std::vector<Direction>& dirs, const Eigen::VectorXd& h) {
  blaschke::SupportPolyhedron sp{dirs, std::vector<double>(h.data(), h.data() + h.size())};
  const auto m = blaschke::intersect_halfspaces(sp);
  return Eigen::Map<const Eigen::VectorXd>(m.face_areas.data(), h.size());
}

/// Central finite differences dA_i/dh_j.
inline Eigen::MatrixXd fd_jacobian(const std::vector<Direction>& dirs, const Eigen::VectorXd& h, double step) {
  const auto k = h.size();
  Eigen::MatrixXd jac(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::VectorXd hp = h, hm = h;
    hp[j] += step;
    hm[j] -= step;
    jac.col(j) = (areas_at(dirs, hp) - areas_at(dirs, hm)) / (2.0 * step);
  }
  return jac;
}

inline MeshPolyhedron hull_of(const std::vector<Vec3>& pts) { return blaschke::convex_hull(pts); }

inline MeshPolyhedron box(double a, double b, double c) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back((i & 1) ? a : 0.0, (i & 2) ? b : 0.0, (i & 4) ? c : 0.0);
  return hull_of(pts);
}

inline MeshPolyhedron cube(double edge) { return box(edge, edge, edge); }

/// Regular tetrahedron with vertices at alternate cube corners.
inline std::vector<Vec3> tetra_vertices() {
  return {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
}

inline Eigen::Matrix3d rot_z(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix(); }

inline std::vector<Vec3> rotated(const std::vector<Vec3>& pts, const Eigen::Matrix3d& r) {
  std::vector<Vec3> out;
  for (const auto& p : pts) out.push_back(r * p);
  return out;
}

/// Regular icosahedron whose face normals are those of the listed data set
/// and whose faces have area 5.
inline std::vector<Vec3> reference_icosahedron() {
  const double phi = std::numbers::phi;
  std::vector<Vec3> v;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      v.emplace_back(0.0, s1 * phi, s2);
      v.emplace_back(s2, 0.0, s1 * phi);
      v.emplace_back(s1 * phi, s2, 0.0);
    }
  }
  // Edge 2 gives face area sqrt(3); rescale to area 5.
  const double scale = std::sqrt(5.0 / std::sqrt(3.0));
  for (auto& p : v) p *= scale;
  return v;
}

/// Symmetric Hausdorff distance between two point sets.
inline double hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  auto one_way = [](const std::vector<Vec3>& x, const std::vector<Vec3>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

/// Hausdorff distance between vertex sets after centroid alignment.
inline double vertex_set_distance(std::vector<Vec3> a, std::vector<Vec3> b) {
  auto center = [](std::vector<Vec3>& pts) {
    Vec3 c = Vec3::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    for (auto& p : pts) p -= c;
  };
  center(a);
  center(b);
  return hausdorff(a, b);
}

/// Random spherical triangle of angular radius about `radius` around a
/// random center, counterclockwise seen from outside.
inline blaschke::SphericalPolygon random_spherical_triangle(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const Vec3 c = Vec3(g(rng), g(rng), g(rng)).normalized();
  const Vec3 e1 = c.unitOrthogonal();
  const Vec3 e2 = c.cross(e1);
  const double base = u(rng);
  blaschke::SphericalPolygon poly;
  for (int i = 0; i < 3; ++i) {
    const double ang = base + i * 2.0 * std::numbers::pi / 3.0 + 0.3 * std::sin(u(rng));
    const Vec3 dir = std::cos(ang) * e1 + std::sin(ang) * e2;
    poly.vertices.push_back((std::cos(radius) * c + std::sin(radius) * dir).normalized());
  }
  return poly;
}

}  // namespace oracle
