#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "blaschke/error.hpp"
#include "blaschke/geometry.hpp"
#include "blaschke/herisson.hpp"
#include "oracles.hpp"
#include "../src/random.hpp"

using namespace blaschke;
using oracle::rel_diff;

namespace {

SupportPolyhedron random_support(std::uint64_t seed) {
  detail::Rng rng(seed);
  const int k = rng.integer(6, 20);
  const auto her = random_herisson(k, seed);
  SupportPolyhedron sp{her.directions(), {}};
  for (int j = 0; j < k; ++j) sp.support_numbers.push_back(rng.uniform(0.8, 1.2));
  return sp;
}

}  // namespace

TEST_CASE("direction normalizes and measures angles") {
  const auto d = Direction::from_xyz(3, 0, 4);
  CHECK(d.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.x() == doctest::Approx(0.6));
  CHECK(Direction::from_xyz(1, 0, 0).angle_to(Direction::from_xyz(0, 1, 0)) ==
        doctest::Approx(std::numbers::pi / 2));
  CHECK(Direction::from_xyz(1, 0, 0).angle_to(Direction::from_xyz(1, 1e-12, 0)) == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK_THROWS_AS(Direction::from_xyz(0, 0, 0), Error);
}

TEST_CASE("half-space intersection of the axis cube") {
  SupportPolyhedron sp;
  for (int s : {1, -1}) {
    sp.directions.push_back(Direction::from_xyz(s, 0, 0));
    sp.directions.push_back(Direction::from_xyz(0, s, 0));
    sp.directions.push_back(Direction::from_xyz(0, 0, s));
  }
  sp.support_numbers.assign(6, 1.0);
  const auto m = intersect_halfspaces(sp);
  CHECK(m.vertices.size() == 8);
  CHECK(m.face_count() == 6);
  CHECK(m.edge_count() == 12);
  for (double a : m.face_areas) CHECK(a == doctest::Approx(4.0).epsilon(1e-12));
  for (const auto& [pair, len] : m.edge_lengths) CHECK(len == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(volume(m) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(check_mesh(m).empty());
}

TEST_CASE("redundant half-space keeps its slot with zero area") {
  SupportPolyhedron sp;
  for (int s : {1, -1}) {
    sp.directions.push_back(Direction::from_xyz(s, 0, 0));
    sp.directions.push_back(Direction::from_xyz(0, s, 0));
    sp.directions.push_back(Direction::from_xyz(0, 0, s));
  }
  sp.support_numbers.assign(6, 1.0);
  sp.directions.push_back(Direction::from_xyz(1, 1, 1));
  sp.support_numbers.push_back(10.0);
  const auto m = intersect_halfspaces(sp);
  CHECK(m.face_slots() == 7);
  CHECK(m.face_count() == 6);
  CHECK(m.face_areas[6] == 0.0);
  CHECK(m.faces[6].empty());
}

TEST_CASE("unbounded region is rejected") {
  SupportPolyhedron sp;
  sp.directions = {Direction::from_xyz(1, 0, 0), Direction::from_xyz(0, 1, 0), Direction::from_xyz(0, 0, 1),
                   Direction::from_xyz(-1, -1, 0)};
  sp.support_numbers.assign(4, 1.0);
  try {
    intersect_halfspaces(sp);
    FAIL("expected UnboundedRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundedRegion);
  }
}

TEST_CASE("empty interior is rejected") {
  SupportPolyhedron sp;
  for (int s : {1, -1}) {
    sp.directions.push_back(Direction::from_xyz(s, 0, 0));
    sp.directions.push_back(Direction::from_xyz(0, s, 0));
    sp.directions.push_back(Direction::from_xyz(0, 0, s));
  }
  sp.support_numbers = {1, 1, 1, -2, 1, 1};
  CHECK_THROWS_AS(intersect_halfspaces(sp), Error);
}

TEST_CASE("convex hull examples") {
  const auto c = oracle::cube(1.0);
  CHECK(c.vertices.size() == 8);
  CHECK(c.face_count() == 6);
  for (const auto& f : c.faces) CHECK(f.size() == 4);

  std::vector<Vec3> pts(c.vertices.begin(), c.vertices.end());
  pts.emplace_back(0.5, 0.5, 0.5);
  pts.emplace_back(0.5, 0.5, 0.0);  // on a face, not a vertex
  const auto c2 = convex_hull(pts);
  CHECK(c2.vertices.size() == 8);
  CHECK(c2.face_count() == 6);

  const auto t = convex_hull(std::vector<Vec3>{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()});
  CHECK(t.face_count() == 4);
  CHECK(volume(t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  try {
    convex_hull(std::vector<Vec3>{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3(1, 1, 1e-12)});
    FAIL("expected DegenerateBody");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateBody);
  }
}

TEST_CASE("hull is idempotent on its own vertices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = intersect_halfspaces(random_support(seed));
    const auto again = convex_hull(m.vertices);
    CHECK(again.vertices.size() == m.vertices.size());
    CHECK(again.face_count() == m.face_count());
    CHECK(again.edge_count() == m.edge_count());
    CHECK(rel_diff(volume(again), volume(m)) < 1e-12);
  }
}

TEST_CASE("volume examples and divergence oracle") {
  CHECK(volume(oracle::cube(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(volume(oracle::box(1, 1, 50)) == doctest::Approx(50.0).epsilon(1e-14));
  const auto ico = continuation_solve(oracle::load_her("icosahedron.her")).mesh;
  CHECK(rel_diff(volume(ico), oracle::divergence_volume(ico)) < 1e-9);
}

TEST_CASE("volume matches divergence oracle on 100 random bodies") {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const auto m = intersect_halfspaces(random_support(seed));
    CHECK(check_mesh(m) == "");
    CHECK(rel_diff(volume(m), oracle::divergence_volume(m)) < 1e-9);
    CHECK(vector_area_residual(m).norm() <= 1e-9 * m.total_area());
    const auto shoelace = oracle::polygon_areas(m);
    for (std::size_t j = 0; j < m.face_slots(); ++j) CHECK(std::abs(shoelace[j] - m.face_areas[j]) < 1e-12 * m.total_area());
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("volume is translation invariant and scales with support numbers") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto sp = random_support(seed);
    const auto m = intersect_halfspaces(sp);
    const Vec3 t(3.5, -7.25, 11.0);
    CHECK(rel_diff(volume(translated(m, t)), volume(m)) < 1e-9);

    const double lambda = 1.7;
    for (auto& h : sp.support_numbers) h *= lambda;
    const auto big = intersect_halfspaces(sp);
    CHECK(rel_diff(volume(big), lambda * lambda * lambda * volume(m)) < 1e-9);
    for (std::size_t j = 0; j < m.face_slots(); ++j) {
      CHECK(std::abs(big.face_areas[j] - lambda * lambda * m.face_areas[j]) <= 1e-9 * big.total_area());
    }
  }
}

TEST_CASE("support value") {
  const auto c = translated(oracle::cube(1.0), Vec3(-0.5, -0.5, -0.5));
  CHECK(support_value(c, Direction::from_xyz(1, 0, 0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(support_value(c, Direction::from_xyz(1, 1, 1)) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
}

TEST_CASE("vector area residual") {
  const auto c = oracle::cube(1.0);
  CHECK(vector_area_residual(c).norm() < 1e-12);
  for (std::size_t j = 0; j < c.face_slots(); ++j) {
    auto holed = c;
    holed.face_areas[j] = 0.0;
    const Vec3 expected = -c.face_areas[j] * c.face_normals[j].vec();
    CHECK((vector_area_residual(holed) - expected).norm() == 0.0);
  }
}

TEST_CASE("integral mean curvature") {
  CHECK(integral_mean_curvature(oracle::cube(2.0)) == doctest::Approx(3 * std::numbers::pi * 2.0).epsilon(1e-12));
  const auto tet = convex_hull(oracle::tetra_vertices());
  const double edge = std::sqrt(8.0);
  CHECK(integral_mean_curvature(tet) / edge ==
        doctest::Approx(3 * (std::numbers::pi - std::acos(1.0 / 3.0))).epsilon(1e-12));

  // Icosphere inscribed in the unit ball, four levels of edge splitting.
  std::vector<Vec3> v = oracle::reference_icosahedron();
  for (auto& p : v) p.normalize();
  std::vector<Vec3> pts = v;
  for (int depth = 0; depth < 4; ++depth) {
    const auto hull = convex_hull(pts);
    std::vector<Vec3> next = pts;
    for (const auto& [pair, len] : hull.edge_lengths) {
      (void)len;
      // Midpoint of the shared edge: the two faces share two vertices.
      std::vector<std::size_t> shared;
      for (auto a : hull.faces[pair.first])
        for (auto b : hull.faces[pair.second])
          if (a == b) shared.push_back(a);
      REQUIRE(shared.size() == 2);
      next.push_back((hull.vertices[shared[0]] + hull.vertices[shared[1]]).normalized());
    }
    pts = next;
  }
  const auto ball = convex_hull(pts);
  CHECK(std::abs(integral_mean_curvature(ball) - 4 * std::numbers::pi) < 0.01 * 4 * std::numbers::pi);
}

TEST_CASE("containment by translation") {
  const auto c1 = oracle::cube(1.0);
  const auto c2 = oracle::cube(2.0);
  const auto in = contains_by_translation(c2, c1);
  CHECK(in.contained);
  // Witness really places the inner cube inside.
  for (const auto& v : c1.vertices) {
    const Vec3 p = v + in.translation;
    for (int i = 0; i < 3; ++i) {
      CHECK(p[i] >= -1e-9);
      CHECK(p[i] <= 2.0 + 1e-9);
    }
  }
  const auto self = contains_by_translation(c2, c2);
  CHECK(self.contained);
  CHECK(self.translation.norm() < 1e-9);
  CHECK_FALSE(contains_by_translation(oracle::cube(10.0), oracle::box(1, 1, 50)).contained);
  CHECK_FALSE(contains_by_translation(c1, c2).contained);
}

TEST_CASE("containment implies volume order on random pairs") {
  int contained = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = intersect_halfspaces(random_support(seed));
    const auto q = scaled(intersect_halfspaces(random_support(seed + 1000)), 0.3 + 0.05 * static_cast<double>(seed));
    if (contains_by_translation(p, q).contained) {
      ++contained;
      CHECK(volume(q) <= volume(p) * (1 + 1e-12));
    }
  }
  CHECK(contained > 0);
}

TEST_CASE("scaling rejects non-positive factors") {
  try {
    scaled(oracle::cube(1.0), 0.0);
    FAIL("expected NonPositiveScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveScale);
  }
}

TEST_CASE("face adjacency and edge table agree") {
  const auto m = intersect_halfspaces(random_support(5));
  const auto adj = face_adjacency(m);
  CHECK(adj.size() == m.edge_count());
  for (const auto& pair : adj) {
    CHECK(m.edge_length(pair.first, pair.second) > 0.0);
    CHECK(m.edge_length(pair.second, pair.first) == m.edge_length(pair.first, pair.second));
  }
  const long v = static_cast<long>(m.vertices.size());
  CHECK(v - static_cast<long>(m.edge_count()) + static_cast<long>(m.face_count()) == 2);
}
