#pragma once

// Exact lattice-point counts P(t), the discrepancy P(t) - pi t, and the
// Dirichlet kernel identity that rewrites P(t) as a sum over Delta_{t,Q}.

#include <cstdint>
#include <string>

namespace circle {

enum class CountMethod { brute, rows, kernel };

CountMethod parse_count_method(const std::string& name);
std::string to_string(CountMethod m);

struct CountResult {
  std::int64_t t = 0;
  std::int64_t count = 0;
  CountMethod method = CountMethod::rows;
};

inline constexpr std::int64_t kMaxRowsT = 1'000'000'000'000;  // 1e12
inline constexpr std::int64_t kMaxBruteT = 100'000'000;       // 1e8
inline constexpr std::int64_t kMaxKernelT = 1'000'000;        // Q = 3 hull enumeration

/// Number of (m, n) with m^2 + n^2 <= t. Throws std::domain_error when t is
/// negative or beyond the method's range.
CountResult count_lattice(std::int64_t t, CountMethod method = CountMethod::rows);

/// P(t) - pi t in extended precision, rounded to double.
double delta(std::int64_t t);
/// Same with P(t) already known.
double delta_from_count(std::int64_t t, std::int64_t count);

/// Normalized 1D Dirichlet kernel (1/Q) sum_{|p|<=R} e(p x / Q) for real x,
/// in closed form sin(pi x) / (Q sin(pi x / Q)).
double dirichlet_kernel(double x, std::int64_t Q);

/// (1/Q^2) sum_{p,q} e((p m + q n)/Q) for integers, via the residue test.
double kernel2d(std::int64_t m, std::int64_t n, std::int64_t Q);

/// Reference double sum for kernel2d, used as a test oracle.
double kernel2d_direct(double m, double n, std::int64_t Q);

struct IdentityCheck {
  bool equal = false;
  double residual = 0.0;
  double kernel_sum = 0.0;
  /// Same sum with f evaluated as the trigonometric double sum.
  double trig_sum = 0.0;
  std::int64_t count = 0;
  /// Every lattice point of the hull lies in the disk.
  bool hull_inside_disk = false;
};

/// Sums kernel2d over the lattice points of Delta_{t,Q} and compares with
/// P(t). residual is the larger of the two sums' deviations.
IdentityCheck verify_identity_2(std::int64_t t, std::int64_t Q);

/// Number of representations of n as an ordered sum of two squares.
std::int64_t r2(std::int64_t n);

}  // namespace circle
