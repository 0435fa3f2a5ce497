#include "hull.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "blaschke/error.hpp"

namespace blaschke::detail {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

HullTriangle make_triangle(std::span<const Vec3> pts, int a, int b, int c) {
  HullTriangle t{{a, b, c}, Vec3::Zero(), 0.0};
  Vec3 n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = n.norm();
  t.normal = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
  t.offset = t.normal.dot((pts[a] + pts[b] + pts[c]) / 3.0);
  return t;
}

}  // namespace

double extent(std::span<const Vec3> points) {
  if (points.empty()) return 0.0;
  Vec3 lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

std::vector<HullTriangle> triangulated_hull(std::span<const Vec3> pts, double eps, double flat_tol) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw Error(ErrorCode::DegenerateBody, "hull needs at least 4 points");

  // Initial simplex from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].x() < pts[i0].x()) i0 = i;
  int i1 = i0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).squaredNorm();
    if (d > best) best = d, i1 = i;
  }
  const Vec3 axis = (pts[i1] - pts[i0]).normalized();
  int i2 = i0;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const Vec3 r = pts[i] - pts[i0];
    const double d = (r - r.dot(axis) * axis).squaredNorm();
    if (d > best) best = d, i2 = i;
  }
  const Vec3 plane_n = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = i0;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(plane_n.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (!(best > flat_tol) || !std::isfinite(best)) {
    throw Error(ErrorCode::DegenerateBody, "points are coplanar within tolerance");
  }

  std::vector<HullTriangle> tris;
  if (plane_n.dot(pts[i3] - pts[i0]) > 0.0) std::swap(i1, i2);
  tris.push_back(make_triangle(pts, i0, i1, i2));
  tris.push_back(make_triangle(pts, i0, i3, i1));
  tris.push_back(make_triangle(pts, i1, i3, i2));
  tris.push_back(make_triangle(pts, i2, i3, i0));

  std::vector<char> visible;
  std::unordered_map<std::uint64_t, int> directed;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.assign(tris.size(), 0);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (tris[t].normal.dot(pts[p]) - tris[t].offset > eps) {
        visible[t] = 1;
        any = true;
      }
    }
    if (!any) continue;
    directed.clear();
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) continue;
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) directed[edge_key(v[e], v[(e + 1) % 3])] = 1;
    }
    std::vector<HullTriangle> next;
    next.reserve(tris.size() + 8);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) {
        next.push_back(tris[t]);
        continue;
      }
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        if (!directed.contains(edge_key(b, a))) next.push_back(make_triangle(pts, a, b, p));
      }
    }
    tris = std::move(next);
  }
  return tris;
}

}  // namespace blaschke::detail
