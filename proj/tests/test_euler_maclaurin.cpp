#include <cmath>
#include <random>

#include "circle/euler_maclaurin.hpp"
#include "doctest.h"

using namespace circle;

namespace {

SmoothFunction2D constant(double c) {
  SmoothFunction2D f;
  f.value = [c](double, double) { return cplx(c); };
  f.dx = f.dy = f.dxy = [](double, double) { return cplx(0.0); };
  return f;
}

// x^2 y + 0.3 y^2 - x + 2
SmoothFunction2D cubic() {
  SmoothFunction2D f;
  f.value = [](double x, double y) { return cplx(x * x * y + 0.3 * y * y - x + 2.0); };
  f.dx = [](double x, double y) { return cplx(2 * x * y - 1.0); };
  f.dy = [](double x, double y) { return cplx(x * x + 0.6 * y); };
  f.dxy = [](double x, double) { return cplx(2 * x); };
  return f;
}

// x y
SmoothFunction2D bilinear() {
  SmoothFunction2D f;
  f.value = [](double x, double y) { return cplx(x * y); };
  f.dx = [](double, double y) { return cplx(y); };
  f.dy = [](double x, double) { return cplx(x); };
  f.dxy = [](double, double) { return cplx(1.0); };
  return f;
}

// cos(0.7 x + 0.4 y)
SmoothFunction2D cosine() {
  SmoothFunction2D f;
  f.value = [](double x, double y) { return cplx(std::cos(0.7 * x + 0.4 * y)); };
  f.dx = [](double x, double y) { return cplx(-0.7 * std::sin(0.7 * x + 0.4 * y)); };
  f.dy = [](double x, double y) { return cplx(-0.4 * std::sin(0.7 * x + 0.4 * y)); };
  f.dxy = [](double x, double y) { return cplx(-0.28 * std::cos(0.7 * x + 0.4 * y)); };
  f.frequency_hint = 0.13;
  return f;
}

LatticePolygon random_polygon(std::mt19937_64& rng, int span, int max_boundary) {
  std::uniform_int_distribution<int> c(-span, span);
  while (true) {
    std::vector<LatticePoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({c(rng), c(rng)});
    auto h = convex_hull(pts);
    if (h.size() < 3) continue;
    LatticePolygon p(h);
    std::int64_t b = 0;
    for (const auto& e : p.edges()) b += e.lambda;
    if (b <= max_boundary) return p;
  }
}

}  // namespace

TEST_CASE("em1d fixtures") {
  auto id = [](double x) { return x; };
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  CHECK(std::abs(em1d(id, one, 0.0, 10.0) - 55.0) < 1e-10);
  // the endpoint term -psi(10) * 10 = +5 closes the identity
  CHECK(-sawtooth(10.0) * 10.0 == 5.0);
  CHECK(std::abs(em1d(one, zero, 0.5, 5.5) - 5.0) < 1e-10);
  auto sq = [](double x) { return x * x; };
  auto dsq = [](double x) { return 2 * x; };
  CHECK(std::abs(em1d(sq, dsq, 0.0, 3.0) - 14.0) < 1e-10);
  CHECK(std::abs(em1d(sq, dsq, -2.3, 4.0) - (4 + 1 + 0 + 1 + 4 + 9 + 16)) < 1e-10);
}

TEST_CASE("em1d_expansion") {
  std::vector<RealFunction> cube = {[](double x) { return x * x * x; },
                                    [](double x) { return 3 * x * x; },
                                    [](double x) { return 6 * x; }, [](double) { return 6.0; },
                                    [](double) { return 0.0; }};
  CHECK(std::abs(em1d_expansion(cube, -0.5, 4.5, 4) - 100.0) < 1e-10);
  // N = 1 agrees with em1d at non-integer endpoints
  CHECK(std::abs(em1d_expansion(cube, 0.3, 6.7, 1) - em1d(cube[0], cube[1], 0.3, 6.7)) < 1e-9);
  std::vector<RealFunction> inv = {[](double x) { return 1 / (x * x); },
                                   [](double x) { return -2 / (x * x * x); },
                                   [](double x) { return 6 / (x * x * x * x); },
                                   [](double x) { return -24 / std::pow(x, 5); }};
  double direct = 0;
  for (int p = 100; p >= 1; --p) direct += 1.0 / (double(p) * p);
  CHECK(std::abs(em1d_expansion(inv, 0.5, 100.5, 3) - direct) < 1e-8);
  CHECK_THROWS_AS(em1d_expansion(inv, 0.5, 100.5, 4), std::domain_error);
  // exact for deg < N polynomials on half-integer endpoints
  std::vector<RealFunction> quad = {[](double x) { return 2 * x * x - x + 1; },
                                    [](double x) { return 4 * x - 1; }, [](double) { return 4.0; },
                                    [](double) { return 0.0; }};
  double s = 0;
  for (int n = -3; n <= 7; ++n) s += 2.0 * n * n - n + 1;
  CHECK(std::abs(em1d_expansion(quad, -3.5, 7.5, 3) - s) < 1e-10);
  // integer endpoints carry weight 1/2
  double half = 0.5 * (2 * 0 - 0 + 1) + 0.5 * (2 * 16 - 4 + 1);
  for (int n = 1; n <= 3; ++n) half += 2.0 * n * n - n + 1;
  CHECK(std::abs(em1d_expansion(quad, 0.0, 4.0, 3) - half) < 1e-10);
}

TEST_CASE("a_L ladder") {
  CHECK(a_L_ladder(0.0).value == 0.0);
  // Oracle: the limit equals P(Y < sX, X > 0) - 1/4 for independent normals,
  // i.e. arctan(s) / (2 pi).
  for (double s : {1.0, -1.0, 0.5, 2.0, -3.0, 7.0, 0.1, 25.0}) {
    const auto r = a_L_ladder(s);
    CHECK(std::abs(r.value - std::atan(s) / kTwoPi) < 1e-7);
    CHECK(std::abs(r.value) <= 0.5);
    CHECK(r.ladder_spread <= 1e-4);
  }
  const double one = a_L(1, 1);
  CHECK(one > 0.0);
  CHECK(one < 0.5);
  CHECK(one == doctest::Approx(0.125).epsilon(1e-6));
  CHECK_THROWS_AS(a_L(1, 0), std::domain_error);
}

TEST_CASE("SmoothFunction2D derivatives are consistent") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  const double h = 1e-5;
  for (const auto& f : {cubic(), cosine(), plane_wave(0.2, 0.4), bilinear()}) {
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng), y = u(rng);
      const cplx fx = (f.value(x + h, y) - f.value(x - h, y)) / (2 * h);
      const cplx fy = (f.value(x, y + h) - f.value(x, y - h)) / (2 * h);
      const cplx fxy = (f.dx(x, y + h) - f.dx(x, y - h)) / (2 * h);
      CHECK(std::abs(fx - f.dx(x, y)) <= 1e-4 * std::max(1.0, std::abs(f.dx(x, y))));
      CHECK(std::abs(fy - f.dy(x, y)) <= 1e-4 * std::max(1.0, std::abs(f.dy(x, y))));
      CHECK(std::abs(fxy - f.dxy(x, y)) <= 1e-4 * std::max(1.0, std::abs(f.dxy(x, y))));
    }
  }
}

TEST_CASE("T_polygon on the unit square") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto r = T_polygon(sq, constant(1.0), 1e-10);
  CHECK(std::abs(r.T_value - cplx(1.0)) < 1e-9);
  CHECK(std::abs(r.weighted_sum - cplx(1.0)) < 1e-12);
  CHECK(std::abs(r.lattice_sum - cplx(4.0)) < 1e-12);
  CHECK(r.boundary_abs_sum == doctest::Approx(4.0));
}

TEST_CASE("T_polygon exact identity and boundary inequality") {
  const double tol = 1e-8;
  std::mt19937_64 rng(2024);
  std::vector<SmoothFunction2D> fields = {constant(1.0), cubic(), bilinear(), cosine(),
                                          plane_wave(1.0 / 5.0, 2.0 / 5.0),
                                          plane_wave(-2.0 / 7.0, 1.0 / 7.0)};
  for (int i = 0; i < 12; ++i) {
    auto p = random_polygon(rng, 6, 40);
    for (const auto& f : fields) {
      auto r = T_polygon(p, f, tol);
      CHECK(std::abs(r.weighted_sum - r.T_value) <= 10 * tol);
      CHECK(std::abs(r.lattice_sum - r.T_value) <= r.boundary_abs_sum + 10 * tol);
    }
    // f = 1 gives the area
    auto r1 = T_polygon(p, constant(1.0), tol);
    CHECK(std::abs(r1.T_value.real() - 0.5 * p.twice_area()) < 10 * tol);
  }
}

TEST_CASE("T_polygon triangle with a plane wave") {
  LatticePolygon tri({{0, 0}, {5, 0}, {0, 5}});
  auto r = T_polygon(tri, plane_wave(1.0 / 5.0, 2.0 / 5.0), 1e-9);
  // brute-force lattice sum over the 21 points
  cplx s = 0;
  int n = 0;
  for (int x = 0; x <= 5; ++x) {
    for (int y = 0; x + y <= 5; ++y) {
      s += e((x + 2.0 * y) / 5.0);
      ++n;
    }
  }
  CHECK(n == 21);
  CHECK(std::abs(r.lattice_sum - s) < 1e-12);
  CHECK(std::abs(r.lattice_sum - r.T_value) <= r.boundary_abs_sum);
  CHECK(std::abs(r.weighted_sum - r.T_value) < 1e-8);
}

TEST_CASE("T_polygon translation invariance") {
  LatticePolygon p({{0, 0}, {4, 1}, {2, 5}, {-1, 3}});
  LatticePolygon q({{3, -2}, {7, -1}, {5, 3}, {2, 1}});
  SmoothFunction2D f = cubic();
  SmoothFunction2D g;
  g.value = [&](double x, double y) { return f.value(x - 3, y + 2); };
  g.dx = [&](double x, double y) { return f.dx(x - 3, y + 2); };
  g.dy = [&](double x, double y) { return f.dy(x - 3, y + 2); };
  g.dxy = [&](double x, double y) { return f.dxy(x - 3, y + 2); };
  auto a = T_polygon(p, f, 1e-9);
  auto b = T_polygon(q, g, 1e-9);
  CHECK(std::abs(a.T_value - b.T_value) < 1e-8);
  CHECK(std::abs(a.lattice_sum - b.lattice_sum) < 1e-9);
}
