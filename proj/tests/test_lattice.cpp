#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "circle/lattice.hpp"
#include "doctest.h"

using namespace circle;

namespace {

std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) { return {v.begin(), v.end()}; }

// Brute-force hull membership oracle: every point of a box tested against
// all edges.
LatticePartition brute_partition(const LatticePolygon& p) {
  LatticePartition out;
  for (auto y = p.min_y(); y <= p.max_y(); ++y) {
    for (auto x = p.min_x(); x <= p.max_x(); ++x) {
      int zeros = 0;
      bool inside = true;
      for (const auto& e : p.edges()) {
        const auto c = (e.end.x - e.start.x) * (y - e.start.y) - (e.end.y - e.start.y) * (x - e.start.x);
        if (c < 0) inside = false;
        if (c == 0) ++zeros;
      }
      if (!inside) continue;
      if (zeros == 0) out.interior.push_back({x, y});
      else if (zeros == 1) out.edge_interior.push_back({x, y});
      else out.vertices.push_back({x, y});
    }
  }
  return out;
}

LatticePolygon random_polygon(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> c(-span, span);
  while (true) {
    std::vector<LatticePoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({c(rng), c(rng)});
    auto h = convex_hull(pts);
    if (h.size() < 3) continue;
    return LatticePolygon(h);
  }
}

}  // namespace

TEST_CASE("isqrt") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  const std::int64_t big = (std::int64_t{1} << 62) + 12345;
  const auto r = isqrt(big);
  CHECK(r <= big / r);
  CHECK(r + 1 > big / (r + 1));
  CHECK(isqrt(INT64_MAX) == 3037000499);
  CHECK_THROWS_AS(isqrt(-1), std::domain_error);
}

TEST_CASE("refined polygon examples") {
  auto p1 = build_refined_polygon(1, 1);
  CHECK(as_set(p1.vertices()) == std::set<LatticePoint>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  auto p2 = build_refined_polygon(2, 1);
  CHECK(as_set(p2.vertices()) == std::set<LatticePoint>{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  CHECK_THROWS_AS(build_refined_polygon(0, 3), std::domain_error);
  CHECK_THROWS_AS(build_refined_polygon(5, 2), std::domain_error);

  // Boundary lies in the annulus [sqrt t - 1/Q, sqrt t].
  const std::int64_t t = 25, Q = 3;
  auto p = build_refined_polygon(t, Q);
  const double lo = std::sqrt(25.0) - 1.0 / Q, hi = std::sqrt(25.0);
  for (const auto& e : p.edges()) {
    for (int k = 0; k <= 200; ++k) {
      const double s = k / 200.0;
      const double x = (e.start.x + s * (e.end.x - e.start.x)) / Q;
      const double y = (e.start.y + s * (e.end.y - e.start.y)) / Q;
      const double r = std::hypot(x, y);
      CHECK(r >= lo - 1e-12);
      CHECK(r <= hi + 1e-12);
    }
  }
}

TEST_CASE("refined polygon invariants") {
  for (std::int64_t t : {3, 10, 37, 100}) {
    for (std::int64_t Q : {1, 3, 5}) {
      auto p = build_refined_polygon(t, Q);
      // idempotent hull
      CHECK(convex_hull(p.vertices()) == p.vertices());
      // dihedral symmetry
      auto vs = as_set(p.vertices());
      for (const auto& v : p.vertices()) {
        CHECK(vs.count({-v.x, v.y}));
        CHECK(vs.count({v.x, -v.y}));
        CHECK(vs.count({v.y, v.x}));
      }
      // lattice points of the hull are exactly the disk points
      auto part = lattice_points_in(p);
      std::int64_t disk = 0;
      const auto lim = Q * Q * t;
      for (auto y = -isqrt(lim); y <= isqrt(lim); ++y) disk += 2 * isqrt(lim - y * y) + 1;
      CHECK(static_cast<std::int64_t>(part.total()) == disk);
    }
  }
}

TEST_CASE("edge data") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto ed = edge_data(sq);
  REQUIRE(ed.size() == 4);
  CHECK(ed[0].outward_normal == LatticePoint{0, -1});
  CHECK(ed[1].outward_normal == LatticePoint{1, 0});
  CHECK(ed[2].outward_normal == LatticePoint{0, 1});
  CHECK(ed[3].outward_normal == LatticePoint{-1, 0});

  LatticePolygon tri({{0, 0}, {2, 4}, {-3, 1}});
  const auto& e = tri.edges()[0];
  CHECK(e.lambda == 2);
  CHECK(e.primitive == LatticePoint{1, 2});

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto p = random_polygon(rng, 8);
    const auto part = lattice_points_in(p);
    // any interior reference point: centroid of vertices
    double cx = 0, cy = 0;
    for (const auto& v : p.vertices()) { cx += v.x; cy += v.y; }
    cx /= p.vertices().size();
    cy /= p.vertices().size();
    std::int64_t lam = 0;
    for (const auto& ed2 : p.edges()) {
      const double mx = 0.5 * (ed2.start.x + ed2.end.x), my = 0.5 * (ed2.start.y + ed2.end.y);
      CHECK(ed2.outward_normal.x * (cx - mx) + ed2.outward_normal.y * (cy - my) < 0);
      CHECK(ed2.outward_normal.x * ed2.primitive.x + ed2.outward_normal.y * ed2.primitive.y == 0);
      CHECK(std::gcd(std::abs(ed2.primitive.x), std::abs(ed2.primitive.y)) == 1);
      lam += ed2.lambda;
    }
    CHECK(lam == static_cast<std::int64_t>(part.edge_interior.size() + part.vertices.size()));
  }
}

TEST_CASE("lattice_points_in and Pick") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto a = lattice_points_in(sq);
  CHECK(a.interior.size() == 0);
  CHECK(a.edge_interior.size() == 0);
  CHECK(a.vertices.size() == 4);
  LatticePolygon sq2({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  auto b = lattice_points_in(sq2);
  CHECK(b.interior == std::vector<LatticePoint>{{1, 1}});
  CHECK(b.edge_interior.size() == 4);
  CHECK(b.vertices.size() == 4);
  LatticePolygon tri({{0, 0}, {3, 0}, {0, 3}});
  auto c = lattice_points_in(tri);
  CHECK(c.interior.size() == 1);
  CHECK(c.edge_interior.size() + c.vertices.size() == 9);
  CHECK(tri.twice_area() == 9);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto p = random_polygon(rng, 10);
    auto part = lattice_points_in(p);
    auto oracle = brute_partition(p);
    CHECK(part.interior == oracle.interior);
    CHECK(as_set(part.edge_interior) == as_set(oracle.edge_interior));
    CHECK(as_set(part.vertices) == as_set(oracle.vertices));
    const auto I = static_cast<std::int64_t>(part.interior.size());
    const auto B = static_cast<std::int64_t>(part.edge_interior.size() + part.vertices.size());
    CHECK(p.twice_area() == 2 * I + B - 2);
  }
}

TEST_CASE("weights") {
  LatticePolygon sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  for (const auto& v : sq.vertices()) CHECK(vertex_weight(sq, v) == doctest::Approx(0.25));
  CHECK(point_weight(sq, {1, 1}) == 1.0);
  CHECK(point_weight(sq, {1, 0}) == 0.5);
  CHECK(point_weight(sq, {5, 5}) == 0.0);
  CHECK_THROWS_AS(vertex_weight(sq, {1, 1}), std::domain_error);
  // vertex angles sum to (k - 2) pi
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    auto p = random_polygon(rng, 10);
    double s = 0;
    for (const auto& v : p.vertices()) s += vertex_weight(p, v);
    CHECK(s == doctest::Approx((p.vertices().size() - 2) / 2.0));
  }
}

TEST_CASE("invalid polygons") {
  CHECK_THROWS_AS(LatticePolygon({{0, 0}, {1, 0}, {2, 0}}), std::domain_error);
  CHECK_THROWS_AS(LatticePolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::domain_error);  // CW
  CHECK_THROWS_AS(LatticePolygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), std::domain_error);
}

TEST_CASE("edge_integral") {
  LatticePolygon a({{0, 0}, {3, 0}, {0, 3}});
  auto r = edge_integral(a.edges()[0], [](double, double) { return cplx(1.0); }, 1e-12);
  CHECK(r.value.real() == doctest::Approx(3.0));
  LatticePolygon b({{0, 0}, {2, 0}, {2, 2}});
  // edge (2,2) -> (0,0): x runs 2 -> 0, integral of x with unit measure per step = 2
  auto r2 = edge_integral(b.edges()[2], [](double x, double) { return cplx(x); }, 1e-12);
  CHECK(r2.value.real() == doctest::Approx(2.0));
  LatticePolygon c({{0, 0}, {1, 0}, {1, 5}});
  auto r3 = edge_integral(c.edges()[1], [](double, double) { return cplx(1.0); }, 1e-12);
  CHECK(r3.value.real() == doctest::Approx(5.0));
}
