#pragma once

// Special functions shared by every other module: the sawtooth family,
// periodic Bernoulli functions, Bessel J0/J1, sine and cosine integrals,
// the additive character e(x) and Dirichlet-kernel partial sums.

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace circle {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Number of retained harmonics in a truncated Fourier series.
class FourierDepth {
 public:
  explicit FourierDepth(std::int64_t n) : n_(n) {
    if (n < 1) throw std::domain_error("FourierDepth: N must be >= 1");
  }
  std::int64_t value() const { return n_; }

 private:
  std::int64_t n_;
};

/// Distance below which a real is treated as an integer by psi1.
inline constexpr double kIntegerTolerance = 0x1p-40;

/// Sawtooth with the midpoint convention: x - floor(x) - 1/2 off the
/// integers and exactly 0 on them.
double psi1(double x);

/// Sawtooth with the floor convention: x - floor(x) - 1/2 everywhere,
/// so it equals -1/2 at the integers. Used by the one-dimensional
/// Euler-Maclaurin formula and the near-circle sums.
double sawtooth(double x);

/// Truncated Fourier series -(1/pi) sum_{n<=N} sin(2 pi n x) / n.
double psi_fourier(double x, FourierDepth depth);

/// Periodic Bernoulli function of index 1 <= k <= 20.
///
/// psi_k = B_k({x}) / k! for k >= 2, which is the unique continuous
/// 1-periodic function with psi_k' = psi_{k-1} and zero mean. k == 1
/// delegates to psi1.
double psi_k(double x, int k);

/// Fourier expansion of psi_k (k >= 2) truncated at N harmonics.
/// Odd k is a sine series, even k a cosine series; harmonics run over
/// positive integers only.
double psi_k_fourier(double x, int k, FourierDepth depth);

/// Bernoulli number B_n (B_1 = -1/2), n <= 20.
double bernoulli_number(int n);

/// Bessel function of the first kind, order 0 or 1, for x >= 0.
double bessel_j(int order, double x);

/// Sine integral Si(x) = int_0^x sin(u)/u du.
double sine_integral(double x);

/// Cosine integral Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du, x > 0.
double cosine_integral(double x);

/// Series / continued-fraction evaluation of (Si, Ci) at x > 0. Kept as a
/// second route to Si for cross-checking.
struct SiCi {
  double si;
  double ci;
};
SiCi sine_cosine_integrals(double x);

/// e(x) = exp(2 pi i x), with the integer part of x removed first.
cplx e(double x);

/// sum_{p=-R}^{R} p^j e(p x) for j in {0, 1}.
cplx dirichlet_sum(double x, std::int64_t R, int j);

/// Distance from x to the nearest integer.
double distance_to_integer(double x);

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    T t = sum_ + v;
    if (magnitude(sum_) >= magnitude(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double magnitude(double v) { return v < 0 ? -v : v; }
  static double magnitude(const cplx& v) { return std::abs(v.real()) + std::abs(v.imag()); }
  T sum_{};
  T comp_{};
};

template <>
inline void CompensatedSum<cplx>::add(cplx v) {
  // Component-wise so each part gets its own compensation.
  auto step = [](double& s, double& c, double x) {
    double t = s + x;
    if ((s < 0 ? -s : s) >= (x < 0 ? -x : x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  };
  double sr = sum_.real(), si = sum_.imag();
  double cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, v.real());
  step(si, ci, v.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

}  // namespace circle
