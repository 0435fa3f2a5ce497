#include "blaschke/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "blaschke/error.hpp"
#include "hull.hpp"
#include "lp.hpp"

namespace blaschke {

// ---------------------------------------------------------------------------
// Direction

Direction Direction::from_vector(const Vec3& v) {
  const double len = v.norm();
  if (!(len > 1e-300) || !std::isfinite(len)) {
    throw Error(ErrorCode::InvalidArgument, "direction from zero or non-finite vector");
  }
  if (std::abs(len - 1.0) <= 4e-16) return Direction(v);
  return Direction(v / len);
}

double Direction::angle_to(const Direction& other) const {
  return std::atan2(v_.cross(other.v_).norm(), v_.dot(other.v_));
}

// ---------------------------------------------------------------------------
// MeshPolyhedron

std::size_t MeshPolyhedron::face_count() const {
  return static_cast<std::size_t>(
      std::count_if(faces.begin(), faces.end(), [](const auto& f) { return !f.empty(); }));
}

double MeshPolyhedron::edge_length(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  auto it = edge_lengths.find(FacePair(i, j));
  return it == edge_lengths.end() ? 0.0 : it->second;
}

double MeshPolyhedron::total_area() const {
  return std::accumulate(face_areas.begin(), face_areas.end(), 0.0);
}

double MeshPolyhedron::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      best = std::max(best, (vertices[i] - vertices[j]).squaredNorm());
  return std::sqrt(best);
}

Vec3 MeshPolyhedron::vertex_centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices) c += v;
  return vertices.empty() ? c : Vec3(c / static_cast<double>(vertices.size()));
}

double MeshPolyhedron::face_offset(std::size_t j) const {
  const auto& f = faces[j];
  if (f.empty()) return support_value(*this, face_normals[j]);
  double sum = 0.0;
  for (auto v : f) sum += face_normals[j].vec().dot(vertices[v]);
  return sum / static_cast<double>(f.size());
}

namespace {

// Edge table from counterclockwise cycles: the directed edge (a, b) of face
// f meets the face that owns (b, a).
std::map<FacePair, double> edges_from_cycles(const std::vector<Vec3>& verts,
                                             const std::vector<std::vector<std::size_t>>& faces) {
  std::unordered_map<std::uint64_t, std::size_t> owner;
  auto key = [](std::size_t a, std::size_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& c = faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) owner[key(c[i], c[(i + 1) % c.size()])] = f;
  }
  std::map<FacePair, double> edges;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& c = faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::size_t a = c[i], b = c[(i + 1) % c.size()];
      auto it = owner.find(key(b, a));
      if (it == owner.end() || it->second == f) continue;
      const double len = (verts[a] - verts[b]).norm();
      if (len > 0.0) edges[FacePair(f, it->second)] = len;
    }
  }
  return edges;
}

// Drop cycle vertices that sit on the segment between their neighbours.
void remove_collinear(std::vector<std::size_t>& cycle, std::span<const Vec3> pts, double tol) {
  bool changed = true;
  while (changed && cycle.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Vec3& a = pts[cycle[(i + cycle.size() - 1) % cycle.size()]];
      const Vec3& b = pts[cycle[i]];
      const Vec3& c = pts[cycle[(i + 1) % cycle.size()]];
      const Vec3 ac = c - a;
      const double len = ac.norm();
      const double dist = len > 0.0 ? (b - a).cross(ac).norm() / len : (b - a).norm();
      if (dist <= tol) {
        cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
}

Vec3 newell(const std::vector<std::size_t>& cycle, const std::vector<Vec3>& pts) {
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < cycle.size(); ++i) n += pts[cycle[i]].cross(pts[cycle[(i + 1) % cycle.size()]]);
  return n;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void validate_support(const SupportPolyhedron& p) {
  const std::size_t k = p.directions.size();
  if (k < 4) throw Error(ErrorCode::UnboundedRegion, "fewer than 4 half-spaces cannot bound a body");
  if (p.support_numbers.size() != k) {
    throw Error(ErrorCode::InvalidArgument, "support numbers and directions differ in length");
  }
  for (double h : p.support_numbers) {
    if (!std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "non-finite support number");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (p.directions[i].angle_to(p.directions[j]) < tol::kMergeAngle) {
        std::ostringstream msg;
        msg << "directions " << i << " and " << j << " coincide";
        throw Error(ErrorCode::DuplicateDirection, msg.str());
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Half-space intersection by polar duality: with c strictly inside, the
// vertices of the body correspond to the facets of the hull of
// n_j / (h_j - n_j . c).

MeshPolyhedron intersect_halfspaces(const SupportPolyhedron& p) {
  validate_support(p);
  const std::size_t k = p.size();
  std::vector<Vec3> normals(k);
  for (std::size_t j = 0; j < k; ++j) normals[j] = p.directions[j].vec();

  const auto center = detail::maximize_margin(normals, p.support_numbers);
  double h_scale = 0.0;
  for (std::size_t j = 0; j < k; ++j)
    h_scale = std::max(h_scale, std::abs(p.support_numbers[j] - normals[j].dot(center.point)));
  if (!(center.margin > 1e-12 * h_scale)) {
    throw Error(ErrorCode::DegenerateBody, "half-space intersection has empty interior");
  }
  const Vec3 c = center.point;

  std::vector<Vec3> dual(k);
  double dual_scale = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    dual[j] = normals[j] / (p.support_numbers[j] - normals[j].dot(c));
    dual_scale = std::max(dual_scale, dual[j].norm());
  }
  std::vector<detail::HullTriangle> tris;
  try {
    tris = detail::triangulated_hull(dual, 1e-13 * dual_scale, 1e-9 * dual_scale);
  } catch (const Error&) {
    throw Error(ErrorCode::UnboundedRegion, "directions do not positively span R^3");
  }

  std::vector<Vec3> raw;
  raw.reserve(tris.size());
  for (const auto& t : tris) {
    if (!(t.offset > 1e-10 * dual_scale)) {
      throw Error(ErrorCode::UnboundedRegion, "directions do not positively span R^3");
    }
    raw.push_back(c + t.normal / t.offset);
  }

  const double scale = detail::extent(raw);
  const double vtol = tol::kRelative * scale;

  // Dedup: triangles of a coplanar dual facet land on the same vertex.
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return raw[a].x() < raw[b].x(); });
  std::vector<int> rep(raw.size(), -1);
  MeshPolyhedron mesh;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    if (rep[i] >= 0) continue;
    rep[i] = static_cast<int>(mesh.vertices.size());
    Vec3 sum = raw[i];
    int count = 1;
    for (std::size_t oj = oi + 1; oj < order.size() && raw[order[oj]].x() - raw[i].x() <= vtol; ++oj) {
      const std::size_t j = order[oj];
      if (rep[j] < 0 && (raw[j] - raw[i]).norm() <= vtol) {
        rep[j] = rep[i];
        sum += raw[j];
        ++count;
      }
    }
    mesh.vertices.push_back(sum / count);
  }

  // Faces: vertices on each plane, ordered counterclockwise about n_j.
  mesh.faces.assign(k, {});
  mesh.face_normals = p.directions;
  mesh.face_areas.assign(k, 0.0);
  std::vector<char> used(mesh.vertices.size(), 0);
  for (std::size_t j = 0; j < k; ++j) {
    const Vec3& n = normals[j];
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      if (std::abs(n.dot(mesh.vertices[v]) - p.support_numbers[j]) <= vtol) on.push_back(v);
    }
    if (on.size() < 3) continue;
    Vec3 centroid = Vec3::Zero();
    for (auto v : on) centroid += mesh.vertices[v];
    centroid /= static_cast<double>(on.size());
    const Vec3 u = n.unitOrthogonal();
    const Vec3 w = n.cross(u);
    std::vector<std::pair<double, std::size_t>> ang;
    for (auto v : on) {
      const Vec3 r = mesh.vertices[v] - centroid;
      ang.emplace_back(std::atan2(r.dot(w), r.dot(u)), v);
    }
    std::sort(ang.begin(), ang.end());
    std::vector<std::size_t> cycle;
    for (const auto& [a, v] : ang) cycle.push_back(v);
    const double area = 0.5 * n.dot(newell(cycle, mesh.vertices));
    if (!(area > 0.0)) continue;
    mesh.faces[j] = std::move(cycle);
    mesh.face_areas[j] = area;
    for (auto v : mesh.faces[j]) used[v] = 1;
  }

  // Reindex away vertices that no face references.
  std::vector<std::size_t> remap(mesh.vertices.size(), 0);
  std::vector<Vec3> kept;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (used[v]) {
      remap[v] = kept.size();
      kept.push_back(mesh.vertices[v]);
    }
  }
  mesh.vertices = std::move(kept);
  for (auto& f : mesh.faces)
    for (auto& v : f) v = remap[v];

  mesh.edge_lengths = edges_from_cycles(mesh.vertices, mesh.faces);
  return mesh;
}

// ---------------------------------------------------------------------------
// Convex hull

MeshPolyhedron convex_hull(std::span<const Vec3> points) {
  if (points.size() < 4) throw Error(ErrorCode::DegenerateBody, "convex hull needs at least 4 points");
  for (const auto& p : points) {
    if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite point");
  }
  const double scale = detail::extent(points);
  const double mtol = tol::kRelative * scale;
  const auto tris = detail::triangulated_hull(points, 1e-12 * scale, mtol);
  const int nt = static_cast<int>(tris.size());

  std::unordered_map<std::uint64_t, int> owner;
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  };
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) owner[key(tris[t].v[e], tris[t].v[(e + 1) % 3])] = t;

  UnionFind groups(nt);
  auto apex_distance = [&](int t, int other) {
    double d = 0.0;
    for (int v : tris[other].v) d = std::max(d, std::abs(tris[t].normal.dot(points[v]) - tris[t].offset));
    return d;
  };
  for (int t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      auto it = owner.find(key(tris[t].v[(e + 1) % 3], tris[t].v[e]));
      if (it == owner.end()) continue;
      const int o = it->second;
      if (tris[t].normal.dot(tris[o].normal) <= 0.0) continue;
      if (apex_distance(t, o) <= mtol && apex_distance(o, t) <= mtol) groups.unite(t, o);
    }
  }

  // Boundary cycle per group.
  std::map<int, std::vector<int>> members;
  for (int t = 0; t < nt; ++t) members[groups.find(t)].push_back(t);
  std::vector<std::vector<std::size_t>> cycles;
  for (const auto& [root, ts] : members) {
    std::unordered_map<std::uint64_t, char> inside;
    for (int t : ts)
      for (int e = 0; e < 3; ++e) inside[key(tris[t].v[e], tris[t].v[(e + 1) % 3])] = 1;
    std::map<int, int> next;
    for (int t : ts) {
      for (int e = 0; e < 3; ++e) {
        const int a = tris[t].v[e], b = tris[t].v[(e + 1) % 3];
        if (!inside.contains(key(b, a))) next[a] = b;
      }
    }
    if (next.empty()) continue;
    std::vector<std::size_t> cycle;
    const int start = next.begin()->first;
    int cur = start;
    do {
      cycle.push_back(static_cast<std::size_t>(cur));
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
    } while (cur != start && cycle.size() <= next.size());
    remove_collinear(cycle, points, mtol);
    if (cycle.size() >= 3) cycles.push_back(std::move(cycle));
  }

  // Keep referenced points in input order.
  std::vector<char> used(points.size(), 0);
  for (const auto& c : cycles)
    for (auto v : c) used[v] = 1;
  std::vector<std::size_t> remap(points.size(), 0);
  MeshPolyhedron mesh;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) {
      remap[i] = mesh.vertices.size();
      mesh.vertices.push_back(points[i]);
    }
  }
  for (auto& c : cycles) {
    for (auto& v : c) v = remap[v];
    const Vec3 n = newell(c, mesh.vertices);
    mesh.face_normals.push_back(Direction::from_vector(n));
    mesh.face_areas.push_back(0.5 * n.norm());
    mesh.faces.push_back(std::move(c));
  }
  mesh.edge_lengths = edges_from_cycles(mesh.vertices, mesh.faces);
  return mesh;
}

// ---------------------------------------------------------------------------
// Measurements

double volume(const MeshPolyhedron& p) {
  const Vec3 c = p.vertex_centroid();
  double sum = 0.0;
  for (std::size_t j = 0; j < p.face_slots(); ++j) {
    if (p.faces[j].empty()) continue;
    sum += (p.face_offset(j) - p.face_normals[j].vec().dot(c)) * p.face_areas[j];
  }
  return sum / 3.0;
}

double support_value(const MeshPolyhedron& p, const Direction& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, d.vec().dot(v));
  return best;
}

Vec3 vector_area_residual(const MeshPolyhedron& p) {
  Vec3 r = Vec3::Zero();
  for (std::size_t j = 0; j < p.face_slots(); ++j) r += p.face_areas[j] * p.face_normals[j].vec();
  return r;
}

double integral_mean_curvature(const MeshPolyhedron& p) {
  double sum = 0.0;
  for (const auto& [pair, len] : p.edge_lengths) {
    sum += len * p.face_normals[pair.first].angle_to(p.face_normals[pair.second]);
  }
  return 0.5 * sum;
}

Containment contains_by_translation(const MeshPolyhedron& outer, const MeshPolyhedron& inner) {
  std::vector<Vec3> normals;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < outer.face_slots(); ++i) {
    if (outer.faces[i].empty()) continue;
    normals.push_back(outer.face_normals[i].vec());
    rhs.push_back(outer.face_offset(i) - support_value(inner, outer.face_normals[i]));
  }
  const auto sol = detail::maximize_margin(normals, rhs);
  Containment out;
  out.translation = sol.point;
  out.margin = sol.margin;
  out.certificate = sol.weights;
  const double scale = std::max(outer.diameter(), inner.diameter());
  out.contained = sol.margin >= -tol::kRelative * scale;
  return out;
}

std::set<FacePair> face_adjacency(const MeshPolyhedron& p) {
  std::set<FacePair> out;
  for (const auto& [pair, len] : p.edge_lengths)
    if (len > 0.0) out.insert(pair);
  return out;
}

MeshPolyhedron translated(const MeshPolyhedron& p, const Vec3& t) {
  MeshPolyhedron out = p;
  for (auto& v : out.vertices) v += t;
  return out;
}

MeshPolyhedron scaled(const MeshPolyhedron& p, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorCode::NonPositiveScale, "scale factor must be positive");
  MeshPolyhedron out = p;
  for (auto& v : out.vertices) v *= factor;
  for (auto& a : out.face_areas) a *= factor * factor;
  for (auto& [pair, len] : out.edge_lengths) len *= factor;
  return out;
}

double aligned_vertex_distance(const MeshPolyhedron& a, const MeshPolyhedron& b) {
  const Vec3 ca = a.vertex_centroid(), cb = b.vertex_centroid();
  auto one_way = [](const MeshPolyhedron& x, const Vec3& cx, const MeshPolyhedron& y, const Vec3& cy) {
    double worst = 0.0;
    for (const auto& v : x.vertices) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : y.vertices) best = std::min(best, ((v - cx) - (w - cy)).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, ca, b, cb), one_way(b, cb, a, ca));
}

std::vector<double> support_numbers(const MeshPolyhedron& p) {
  std::vector<double> h(p.face_slots());
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = p.face_offset(j);
  return h;
}

std::string check_mesh(const MeshPolyhedron& p) {
  std::ostringstream err;
  const double scale = p.diameter();
  const auto h = support_numbers(p);
  for (std::size_t j = 0; j < p.face_slots(); ++j) {
    if (p.faces[j].empty()) continue;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      if (p.face_normals[j].vec().dot(p.vertices[v]) > h[j] + tol::kRelative * scale) {
        err << "vertex " << v << " lies outside face " << j;
        return err.str();
      }
    }
  }
  const long euler = static_cast<long>(p.vertices.size()) - static_cast<long>(p.edge_count()) +
                     static_cast<long>(p.face_count());
  if (euler != 2) {
    err << "Euler characteristic " << euler << " != 2";
    return err.str();
  }
  const double residual = vector_area_residual(p).norm();
  if (residual > tol::kRelative * p.total_area()) {
    err << "vector-area residual " << residual << " exceeds closure tolerance";
    return err.str();
  }
  for (const auto& [pair, len] : p.edge_lengths) {
    if (!(len > 0.0) || p.faces[pair.first].empty() || p.faces[pair.second].empty()) {
      err << "edge table entry (" << pair.first << ", " << pair.second << ") is invalid";
      return err.str();
    }
  }
  return {};
}

}  // namespace blaschke
