#include "circle/counting.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circle/lattice.hpp"
#include "circle/numerics.hpp"

namespace circle {

CountMethod parse_count_method(const std::string& name) {
  if (name == "brute") return CountMethod::brute;
  if (name == "rows") return CountMethod::rows;
  if (name == "kernel") return CountMethod::kernel;
  throw std::invalid_argument("unknown count method: " + name);
}

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::brute: return "brute";
    case CountMethod::rows: return "rows";
    case CountMethod::kernel: return "kernel";
  }
  return "?";
}

namespace {

std::int64_t count_rows(std::int64_t t) {
  const std::int64_t r = isqrt(t);
  std::int64_t total = 2 * r + 1;  // m = 0
  for (std::int64_t m = 1; m <= r; ++m) total += 2 * (2 * isqrt(t - m * m) + 1);
  return total;
}

// Exhaustive cell test over the octant 0 < m < n, then symmetry. The inner
// loop is a branch-free compare over a table of squares.
std::int64_t count_brute(std::int64_t t) {
  const std::int64_t k = isqrt(t);
  if (t < 1) return 1;
  std::vector<std::int32_t> squares(static_cast<std::size_t>(k) + 1);
  for (std::int64_t n = 0; n <= k; ++n) squares[n] = static_cast<std::int32_t>(n * n);
  std::int64_t axis = 0, diagonal = 0, octant = 0;
  for (std::int64_t n = 1; n <= k; ++n) axis += (n * n <= t);
  for (std::int64_t m = 1; m <= k; ++m) {
    diagonal += (2 * m * m <= t);
    const auto lim = static_cast<std::int32_t>(t - m * m < 0 ? -1 : t - m * m);
    if (lim < 0) continue;
    std::int32_t c = 0;
    const std::int32_t* sq = squares.data();
    for (std::int64_t n = m + 1; n <= k; ++n) c += (sq[n] <= lim);
    octant += c;
  }
  return 1 + 4 * axis + 4 * diagonal + 8 * octant;
}

// Kernel sums over the lattice points of Delta_{t,Q}; the trigonometric
// form is skipped when with_trig is false.
IdentityCheck hull_sums(std::int64_t t, std::int64_t Q, bool with_trig) {
  const auto poly = build_refined_polygon(t, Q);
  const std::int64_t lim = Q * Q * t;
  IdentityCheck out;
  out.hull_inside_disk = true;
  CompensatedSum<double> s, trig;
  for (std::int64_t y = poly.min_y(); y <= poly.max_y(); ++y) {
    const auto [lo, hi] = poly.row_range(y);
    if (lo > hi) continue;
    const std::int64_t far = std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
    if (far * far + y * y > lim) out.hull_inside_disk = false;
    for (std::int64_t x = lo; x <= hi; ++x) {
      s.add(kernel2d(x, y, Q));
      if (with_trig) trig.add(kernel2d_direct(static_cast<double>(x), static_cast<double>(y), Q));
    }
  }
  out.kernel_sum = s.value();
  out.trig_sum = trig.value();
  return out;
}

std::int64_t count_kernel(std::int64_t t) {
  if (t == 0) return 1;
  return static_cast<std::int64_t>(std::llround(hull_sums(t, 3, false).kernel_sum));
}

}  // namespace

CountResult count_lattice(std::int64_t t, CountMethod method) {
  if (t < 0) throw std::domain_error("count_lattice: t must be >= 0");
  CountResult out{t, 0, method};
  switch (method) {
    case CountMethod::rows:
      if (t > kMaxRowsT) throw std::domain_error("count_lattice: rows method limited to t <= 1e12");
      out.count = count_rows(t);
      break;
    case CountMethod::brute:
      if (t > kMaxBruteT) throw std::domain_error("count_lattice: brute method limited to t <= 1e8");
      out.count = count_brute(t);
      break;
    case CountMethod::kernel:
      if (t > kMaxKernelT) {
        throw std::domain_error("count_lattice: kernel method limited to t <= 1e6");
      }
      out.count = count_kernel(t);
      break;
  }
  return out;
}

double delta_from_count(std::int64_t t, std::int64_t count) {
  constexpr long double pi_l = 3.141592653589793238462643383279502884L;
  const long double d = static_cast<long double>(count) - pi_l * static_cast<long double>(t);
  return static_cast<double>(d);
}

double delta(std::int64_t t) {
  if (t < 1) throw std::domain_error("delta: t must be >= 1");
  return delta_from_count(t, count_lattice(t, CountMethod::rows).count);
}

double dirichlet_kernel(double x, std::int64_t Q) {
  if (Q < 1 || Q % 2 == 0) throw std::domain_error("dirichlet_kernel: Q must be odd and >= 1");
  if (Q == 1) return 1.0;
  const double q = static_cast<double>(Q);
  // Reduce x mod Q; Q odd makes the two sign flips cancel.
  const double y = x - q * std::nearbyint(x / q);
  if (std::abs(y) < 1e-7) {
    return 1.0 - (kPi * kPi * y * y / 6.0) * (1.0 - 1.0 / (q * q));
  }
  return std::sin(kPi * y) / (q * std::sin(kPi * y / q));
}

double kernel2d(std::int64_t m, std::int64_t n, std::int64_t Q) {
  if (Q < 1 || Q % 2 == 0) throw std::domain_error("kernel2d: Q must be odd and >= 1");
  return (m % Q == 0 && n % Q == 0) ? 1.0 : 0.0;
}

double kernel2d_direct(double m, double n, std::int64_t Q) {
  if (Q < 1 || Q % 2 == 0) throw std::domain_error("kernel2d_direct: Q must be odd and >= 1");
  const std::int64_t R = (Q - 1) / 2;
  CompensatedSum<cplx> s;
  for (std::int64_t p = -R; p <= R; ++p) {
    for (std::int64_t q = -R; q <= R; ++q) {
      s.add(e((static_cast<double>(p) * m + static_cast<double>(q) * n) / static_cast<double>(Q)));
    }
  }
  return s.value().real() / static_cast<double>(Q * Q);
}

IdentityCheck verify_identity_2(std::int64_t t, std::int64_t Q) {
  auto out = hull_sums(t, Q, true);
  out.count = count_lattice(t, CountMethod::rows).count;
  const double pc = static_cast<double>(out.count);
  out.residual = std::max(std::abs(out.kernel_sum - pc), std::abs(out.trig_sum - pc));
  out.equal = out.residual <= 1e-9;
  return out;
}

std::int64_t r2(std::int64_t n) {
  if (n < 0) return 0;
  std::int64_t c = 0;
  const std::int64_t k = isqrt(n);
  for (std::int64_t m = -k; m <= k; ++m) {
    const std::int64_t rest = n - m * m;
    const std::int64_t j = isqrt(rest);
    if (j * j == rest) c += (j == 0) ? 1 : 2;
  }
  return c;
}

}  // namespace circle
