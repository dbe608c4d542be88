#include <cmath>
#include <random>
#include <stdexcept>

#include "circle/counting.hpp"
#include "circle/numerics.hpp"
#include "doctest.h"

using namespace circle;

namespace {

// Plain double loop over the full square, the simplest possible oracle.
std::int64_t square_loop(std::int64_t t) {
  std::int64_t k = 0;
  while ((k + 1) * (k + 1) <= t) ++k;
  std::int64_t c = 0;
  for (std::int64_t m = -k; m <= k; ++m) {
    for (std::int64_t n = -k; n <= k; ++n) c += (m * m + n * n <= t);
  }
  return c;
}

}  // namespace

TEST_CASE("count_lattice examples") {
  for (auto m : {CountMethod::brute, CountMethod::rows, CountMethod::kernel}) {
    CHECK(count_lattice(0, m).count == 1);
    CHECK(count_lattice(1, m).count == 5);
    CHECK(count_lattice(25, m).count == 81);
    CHECK(count_lattice(5, m).count == 21);
  }
  CHECK_THROWS_AS(count_lattice(-1), std::domain_error);
  CHECK_THROWS_AS(count_lattice(kMaxBruteT + 1, CountMethod::brute), std::domain_error);
  CHECK(parse_count_method("rows") == CountMethod::rows);
  CHECK_THROWS(parse_count_method("fast"));
}

TEST_CASE("methods agree with the square loop") {
  for (std::int64_t t = 0; t <= 2000; ++t) {
    const auto oracle = square_loop(t);
    CHECK(count_lattice(t, CountMethod::rows).count == oracle);
    CHECK(count_lattice(t, CountMethod::brute).count == oracle);
    CHECK(oracle % 4 == 1);
  }
  CHECK(count_lattice(1'000'000, CountMethod::rows).count ==
        count_lattice(1'000'000, CountMethod::brute).count);
  for (std::int64_t t : {37, 500, 4321}) {
    CHECK(count_lattice(t, CountMethod::kernel).count == count_lattice(t).count);
  }
}

TEST_CASE("monotonicity and r2 consistency") {
  std::int64_t prev = count_lattice(0).count;
  for (std::int64_t t = 1; t <= 10000; ++t) {
    const auto c = count_lattice(t).count;
    CHECK(c >= prev);
    CHECK(c - prev == r2(t));
    prev = c;
  }
}

TEST_CASE("delta") {
  CHECK(delta(1) == doctest::Approx(5 - kPi).epsilon(1e-12));
  CHECK(delta(2) == doctest::Approx(9 - 2 * kPi).epsilon(1e-12));
  CHECK(std::abs(delta(1) - 1.858407) < 1e-6);
  CHECK(std::abs(delta(2) - 2.716815) < 1e-6);
  bool pos = false, neg = false;
  for (std::int64_t t = 1; t <= 10000; ++t) {
    const double d = delta(t);
    pos |= d > 0;
    neg |= d < 0;
  }
  CHECK(pos);
  CHECK(neg);
  // round-off at 1e12: oracle splits pi into hi + lo and uses an exact
  // product error term.
  const std::int64_t t = 1'000'000'000'000;
  const auto c = count_lattice(t).count;
  const double hi = 3.141592653589793;
  const double lo = 1.2246467991473532e-16;
  const double td = static_cast<double>(t);
  const double prod = hi * td;
  const double err = std::fma(hi, td, -prod);
  const double split = (static_cast<double>(c) - prod) - err - lo * td;
  CHECK(std::abs(delta_from_count(t, c) - split) < 1e-6);
}

TEST_CASE("kernel2d") {
  CHECK(kernel2d(21, -12, 3) == 1.0);
  CHECK(kernel2d(1, 0, 3) == 0.0);
  CHECK(kernel2d(5, 7, 1) == 1.0);
  CHECK_THROWS_AS(kernel2d(1, 1, 4), std::domain_error);
  for (std::int64_t Q : {1, 3, 5, 7, 9}) {
    for (int m = -20; m <= 20; ++m) {
      for (int n = -20; n <= 20; ++n) {
        CHECK(std::abs(kernel2d(m, n, Q) - kernel2d_direct(m, n, Q)) < 1e-12);
      }
    }
    for (double x : {-7.3, -0.2, 0.0, 1e-9, 0.4, 2.5, 3.0, 11.7}) {
      CHECK(std::abs(dirichlet_kernel(x, Q) * dirichlet_kernel(0.3, Q) -
                     kernel2d_direct(x, 0.3, Q)) < 1e-12);
    }
  }
}

TEST_CASE("kernel sum over the refined hull") {
  auto a = verify_identity_2(5, 3);
  CHECK(a.kernel_sum == doctest::Approx(21.0));
  CHECK(a.residual <= 1e-9);
  CHECK(a.hull_inside_disk);
  auto b = verify_identity_2(2, 1);
  CHECK(b.kernel_sum == doctest::Approx(9.0));
  for (std::int64_t Q : {3, 5, 7}) CHECK(verify_identity_2(10, Q).residual <= 1e-9);
}
