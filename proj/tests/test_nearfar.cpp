#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "circle/nearfar.hpp"
#include "circle/numerics.hpp"
#include "circle/quadrature.hpp"
#include "doctest.h"

using namespace circle;

TEST_CASE("bump_v") {
  CHECK(bump_v(kPi / 3) == 1.0);
  CHECK(bump_v(kPi / 16) == 0.0);
  CHECK(bump_v(kPi / 4) == 1.0);
  CHECK(bump_v(kPi / 2) == 1.0);
  CHECK(bump_v(0.8 * kPi) == 0.0);
  CHECK(bump_v(kPi) == 0.0);
  CHECK_THROWS_AS(bump_v(-0.1), std::domain_error);
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double th = kPi / 8 + (kPi / 8) * i / 400.0;
    const double v = bump_v(th);
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }
  const double h = 1e-4;
  for (double th : {kPi / 8, kPi / 4, kPi / 2, 3 * kPi / 4}) {
    CHECK(std::abs((bump_v(th + h) - bump_v(th - h)) / (2 * h)) <= 1e-6);
  }
}

TEST_CASE("SplitParams") {
  auto s = SplitParams::make(100);
  CHECK(s.alpha == 7);
  CHECK(s.n_min == 5);
  CHECK(s.n_max == 20);
  CHECK(s.tau == 1);
  for (std::int64_t t : {2, 17, 50, 51, 1000, 99999}) {
    auto p = SplitParams::make(t);
    CHECK(2 * p.alpha * p.alpha <= t);
    CHECK(2 * (p.alpha + 1) * (p.alpha + 1) > t);
    CHECK(4 * p.n_min * p.n_min >= t);
    CHECK(4 * (p.n_min - 1) * (p.n_min - 1) < t);
  }
  CHECK(SplitParams::make(1'000'000, 0.125).tau == 5);
  CHECK_THROWS_AS(SplitParams::make(100, 0.2), std::domain_error);
  CHECK(default_R(100) == 3);
}

TEST_CASE("inner_integral") {
  // stationary phase ladder at t = 25, m = 3, n = 4
  double c = 0.0;
  for (double r : {1.0, 2.0, 3.0, 5.0, 8.0, 13.0}) {
    const double d = inner_integral(r, 3, 4, 25, InnerMode::direct);
    const double s = inner_integral(r, 3, 4, 25, InnerMode::stationary);
    c = std::max(c, std::abs(d - s) / (std::pow(r, -2.5) * 16.0));
    CHECK(std::abs(d) <= kPi / std::sqrt(r));
  }
  CHECK(std::isfinite(c));
  CHECK(c <= 10.0);
  CHECK(inner_integral(4.0, 0, 3, 16, InnerMode::stationary) == 0.0);
  CHECK_THROWS_AS(inner_integral(0.5, 1, 1, 4, InnerMode::direct), std::domain_error);
}

TEST_CASE("log_cosine_integral") {
  for (double w : {0.0, 1e-9, 0.01, 0.3, 1.7, 4.25}) {
    for (double R : {1.0, 2.0, 3.0, 7.0}) {
      QuadOptions o;
      o.abs_tol = 1e-12;
      o.frequency_hint = w;
      const double oracle =
          integrate_1d([&](double r) { return std::cos(kTwoPi * r * w) / r; }, 1.0, R, o).value;
      CHECK(std::abs(log_cosine_integral(w, R) - oracle) <= 1e-9);
      CHECK(log_cosine_integral(-w, R) == log_cosine_integral(w, R));
    }
  }
}

TEST_CASE("E_sum") {
  CHECK(E_sum(1, 1, EMode::direct) == 0.0);
  CHECK(E_sum(1, 1, EMode::reduced) == 0.0);
  const std::int64_t t = 25, R = default_R(t);
  const double d = E_sum(t, R, EMode::direct);
  const double r = E_sum(t, R, EMode::reduced);
  const double l2 = std::pow(std::log(25.0), 2);
  CHECK(std::abs(d - r) <= 10.0 * l2);
  // the reduced form equals the stationary integrand integrated over r by quadrature
  auto sp = SplitParams::make(t);
  double stat = 0.0;
  for (std::int64_t m = sp.m_min; m <= sp.m_max; ++m) {
    for (std::int64_t n = sp.n_min; n <= sp.n_max; ++n) {
      QuadOptions o;
      o.abs_tol = 1e-12;
      o.frequency_hint = 10;
      const double v = integrate_1d(
          [&](double rr) { return inner_integral(rr, m, n, t, InnerMode::stationary); }, 1.0,
          static_cast<double>(R), o).value;
      stat += 25.0 / static_cast<double>(m * n) * v;
    }
  }
  CHECK(std::abs(stat - r) <= 1e-9);
  CHECK_THROWS_AS(E_sum(101, 3, EMode::direct), std::domain_error);
}

TEST_CASE("L_sum") {
  double c = 0.0;
  for (double a : {1.0, -2.0, 5.0, 17.0}) {
    for (double q : {1.0, 2.0, -3.0}) {
      const double v = L_term(400, a, q);
      c = std::max(c, std::abs(v) * std::sqrt(std::abs(q)) / std::pow(400.0, 0.25));
      CHECK(L_term(400, -a, -q) == doctest::Approx(v).epsilon(1e-12));
    }
  }
  CHECK(c <= 10.0);
  const double a = L_sum(100, 3, 9, 1e-9);
  const double b = L_sum(100, 3, 9, 1e-12);
  CHECK(std::abs(a - b) <= 1e-6);
  // twice the q > 0 half
  double half = 0.0;
  for (int p = -3; p <= 3; ++p) {
    if (p == 0) continue;
    for (int q = 1; q <= 3; ++q) {
      for (int mu = -9; mu <= 9; ++mu) half += L_term(100, p + 7.0 * mu, q, 1e-12) / q;
    }
  }
  CHECK(std::abs(2 * half - b) <= 1e-8);
  CHECK_THROWS_AS(L_sum(100, 3, 50), std::domain_error);
}

TEST_CASE("psi_circle_sum and pick_check") {
  CHECK(psi_circle_sum(2) == -0.5);
  // oracle: floor by integer search
  for (std::int64_t t : {3, 10, 50, 99, 100, 1234}) {
    double s = 0;
    for (std::int64_t m = 1; 2 * m * m <= t; ++m) {
      const std::int64_t v = t - m * m;
      std::int64_t k = 0;
      while ((k + 1) * (k + 1) <= v) ++k;
      s += std::sqrt(static_cast<double>(v)) - static_cast<double>(k) - 0.5;
    }
    CHECK(std::abs(psi_circle_sum(t) - s) <= 1e-9);
  }
  // bounded with no growth: regression of block maxima over dyadic blocks;
  // blocks below 2^8 hold too few values for their max to approach the sup
  std::vector<double> lx, ly;
  double C = 0.0;
  for (int k = 1; (1 << (k + 1)) <= 16384; ++k) {
    double mx = 0.0;
    for (std::int64_t t = std::max<std::int64_t>(2, 1 << k); t < (1 << (k + 1)) && t <= 10000; ++t) {
      mx = std::max(mx, std::abs(pick_check(t)));
    }
    C = std::max(C, mx);
    if (k >= 8) {
      lx.push_back(std::log(std::pow(2.0, k)));
      ly.push_back(std::log(mx));
    }
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope <= 0.05);
  CHECK(std::abs(pick_check(100)) <= C);
  CHECK(C < 1.0);
}
