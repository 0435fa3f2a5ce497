#include "blaschke/spherical.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

// Whether minor arcs ab and cd cross at an interior point of both.
bool arcs_cross(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 n1 = a.cross(b), n2 = c.cross(d);
  Vec3 x = n1.cross(n2);
  const double len = x.norm();
  if (len < 1e-14) return false;  // same great circle
  x /= len;
  for (const Vec3& cand : {x, Vec3(-x)}) {
    auto on_arc = [&](const Vec3& p, const Vec3& q) {
      const double total = angle_between(p, q);
      return angle_between(p, cand) + angle_between(cand, q) <= total + 1e-12 &&
             angle_between(p, cand) > 1e-12 && angle_between(cand, q) > 1e-12;
    };
    if (on_arc(a, b) && on_arc(c, d)) return true;
  }
  return false;
}

// Degree-5, 7-point rule on the reference triangle (barycentric, weights sum
// to 1).
struct Node {
  double l0, l1, l2, w;
};
constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
constexpr double kW0 = 0.225, kW1 = 0.132394152788506, kW2 = 0.125939180544827;
constexpr std::array<Node, 7> kRule{{
    {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, kW0},
    {kA1, kB1, kB1, kW1},
    {kB1, kA1, kB1, kW1},
    {kB1, kB1, kA1, kW1},
    {kA2, kB2, kB2, kW2},
    {kB2, kA2, kB2, kW2},
    {kB2, kB2, kA2, kW2},
}};

// Integral of the position vector over the spherical triangle abc, via the
// radial projection of the flat triangle: with q = l0 a + l1 b + l2 c,
// dsigma = det(a, b, c) / |q|^3 * dA_flat. Signed by orientation.
Vec3 leaf_integral(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double det = a.dot(b.cross(c));
  // Flat parameter area is 1/2 for the unit reference triangle mapped by
  // (b - a, c - a); det already carries the cross product.
  Vec3 sum = Vec3::Zero();
  for (const auto& n : kRule) {
    const Vec3 q = n.l0 * a + n.l1 * b + n.l2 * c;
    const double r2 = q.squaredNorm();
    sum += n.w * q / (r2 * r2);
  }
  return 0.5 * det * sum;
}

Vec3 subdivide(const Vec3& a, const Vec3& b, const Vec3& c, int depth) {
  if (depth == 0) return leaf_integral(a, b, c);
  const Vec3 ab = (a + b).normalized();
  const Vec3 bc = (b + c).normalized();
  const Vec3 ca = (c + a).normalized();
  return subdivide(a, ab, ca, depth - 1) + subdivide(ab, b, bc, depth - 1) + subdivide(ca, bc, c, depth - 1) +
         subdivide(ab, bc, ca, depth - 1);
}

// Gauss-Legendre, 3 points on [0, 1].
constexpr std::array<std::pair<double, double>, 3> kGauss{{
    {0.1127016653792583, 5.0 / 18.0},
    {0.5, 8.0 / 18.0},
    {0.8872983346207417, 5.0 / 18.0},
}};

// Boundary integral of the outward conormal along the minor arc a -> b. At
// a point p moving with unit tangent t, D is on the left (p x t side), so the
// outward conormal is t x p.
Vec3 arc_integral(const Vec3& a, const Vec3& b, int panels) {
  const double theta = angle_between(a, b);
  const Vec3 axis = a.cross(b).normalized();
  const Vec3 perp = axis.cross(a);  // unit, tangent at a toward b
  Vec3 sum = Vec3::Zero();
  const double h = theta / panels;
  for (int i = 0; i < panels; ++i) {
    for (const auto& [x, w] : kGauss) {
      const double s = (i + x) * h;
      const Vec3 p = std::cos(s) * a + std::sin(s) * perp;
      const Vec3 t = -std::sin(s) * a + std::cos(s) * perp;
      sum += w * h * t.cross(p);
    }
  }
  return sum;
}

}  // namespace

void validate_polygon(const SphericalPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.empty()) return;
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidPolygon, what); };
  if (v.size() < 3) fail("a polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].allFinite() || std::abs(v[i].norm() - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg << "vertex " << i << " is not a unit vector";
      fail(msg.str());
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double ang = angle_between(v[i], v[(i + 1) % v.size()]);
    if (ang <= 1e-9 || ang >= std::numbers::pi - 1e-9) {
      std::ostringstream msg;
      msg << "edge " << i << " joins equal or antipodal vertices";
      fail(msg.str());
    }
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (arcs_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        std::ostringstream msg;
        msg << "edges " << i << " and " << j << " cross";
        fail(msg.str());
      }
    }
  }
}

SphericalIdentityTerms spherical_identity_terms(const SphericalPolygon& poly, int refinement) {
  if (refinement < 1) throw Error(ErrorCode::InvalidArgument, "refinement must be >= 1");
  validate_polygon(poly);
  SphericalIdentityTerms out;
  const auto& v = poly.vertices;
  if (v.empty()) {
    // Whole sphere as the octahedron's eight octants; no boundary.
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        for (int sz : {-1, 1}) {
          Vec3 a(sx, 0, 0), b(0, sy, 0), c(0, 0, sz);
          if (sx * sy * sz < 0) std::swap(a, b);
          out.area_term += 2.0 * subdivide(a, b, c, refinement);
        }
    return out;
  }

  // Signed fan about a center derived from the boundary orientation.
  Vec3 center = Vec3::Zero();
  for (std::size_t i = 0; i < v.size(); ++i) center += v[i].cross(v[(i + 1) % v.size()]);
  if (center.norm() < 1e-12) throw Error(ErrorCode::InvalidPolygon, "cannot find a fan center");
  center.normalize();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.area_term += 2.0 * subdivide(center, v[i], v[(i + 1) % v.size()], refinement);
  }
  const int panels = 1 << refinement;
  for (std::size_t i = 0; i < v.size(); ++i) out.boundary_term += arc_integral(v[i], v[(i + 1) % v.size()], panels);
  return out;
}

Vec3 spherical_identity_residual(const SphericalPolygon& poly, int refinement) {
  return spherical_identity_terms(poly, refinement).residual();
}

}  // namespace blaschke
