#include "circle/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "circle/quadrature.hpp"

namespace circle {

namespace {

// Exact Bernoulli numbers B_0..B_20 (B_1 = -1/2).
constexpr std::array<double, 21> kBernoulli = {
    1.0,          -1.0 / 2.0,  1.0 / 6.0,       0.0, -1.0 / 30.0,  0.0,
    1.0 / 42.0,   0.0,         -1.0 / 30.0,     0.0, 5.0 / 66.0,   0.0,
    -691.0 / 2730.0, 0.0,      7.0 / 6.0,       0.0, -3617.0 / 510.0, 0.0,
    43867.0 / 798.0, 0.0,      -174611.0 / 330.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Bernoulli polynomial B_k(x) by Horner on sum_j C(k,j) B_j x^{k-j}.
double bernoulli_polynomial(int k, double x) {
  const auto& b = kBernoulli;
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) acc = acc * x + binomial(k, j) * b[j];
  return acc;
}

double bessel_series(int order, double x) {
  // J_n(x) = sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!)
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = (order == 0) ? 1.0 : half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && k > 2) break;
  }
  return sum;
}

double bessel_asymptotic(int order, double x) {
  // Hankel expansion, summed to the smallest term.
  const double mu = 4.0 * order * order;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  const double eight_x = 8.0 * x;
  for (int k = 1; k < 120; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (static_cast<double>(k) * eight_x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // k odd -> Q, k even -> P; signs alternate in pairs.
    const int r = k % 4;
    if (r == 1) q += term;
    else if (r == 2) p -= term;
    else if (r == 3) q -= term;
    else p += term;
    if (mag < 1e-17) break;
  }
  // chi = x - (order/2 + 1/4) pi
  const double c = std::cos(x), s = std::sin(x);
  double cos_chi, sin_chi;
  const double r2 = std::sqrt(0.5);
  if (order == 0) {
    cos_chi = r2 * (c + s);
    sin_chi = r2 * (s - c);
  } else {
    cos_chi = r2 * (s - c);
    sin_chi = -r2 * (c + s);
  }
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double psi1(double x) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) <= kIntegerTolerance) return 0.0;
  return x - std::floor(x) - 0.5;
}

double sawtooth(double x) { return x - std::floor(x) - 0.5; }

double psi_fourier(double x, FourierDepth depth) {
  const double frac = x - std::nearbyint(x);
  CompensatedSum<double> s;
  for (std::int64_t n = 1; n <= depth.value(); ++n) {
    const double nn = static_cast<double>(n);
    s.add(std::sin(kTwoPi * nn * frac) / nn);
  }
  return -s.value() / kPi;
}

double bernoulli_number(int n) {
  if (n < 0 || n > 20) throw std::domain_error("bernoulli_number: 0 <= n <= 20");
  return kBernoulli[n];
}

double psi_k(double x, int k) {
  if (k < 1 || k > 20) throw std::domain_error("psi_k: 1 <= k <= 20");
  if (k == 1) return psi1(x);
  const double frac = x - std::floor(x);
  return bernoulli_polynomial(k, frac) / factorial(k);
}

double psi_k_fourier(double x, int k, FourierDepth depth) {
  if (k < 2) throw std::domain_error("psi_k_fourier: k >= 2");
  const double frac = x - std::nearbyint(x);
  const bool even = (k % 2 == 0);
  // psi_{2j}   = (-1)^{j-1} 2 sum cos(2 pi p x) / (2 pi p)^{2j}
  // psi_{2j-1} = (-1)^{j}   2 sum sin(2 pi p x) / (2 pi p)^{2j-1}
  const int j = even ? k / 2 : (k + 1) / 2;
  const double sign = even ? ((j - 1) % 2 == 0 ? 1.0 : -1.0) : (j % 2 == 0 ? 1.0 : -1.0);
  CompensatedSum<double> s;
  // Smallest terms first.
  for (std::int64_t p = depth.value(); p >= 1; --p) {
    const double w = kTwoPi * static_cast<double>(p);
    const double arg = w * frac;
    const double trig = even ? std::cos(arg) : std::sin(arg);
    s.add(trig / std::pow(w, k));
  }
  return sign * 2.0 * s.value();
}

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_j: order must be 0 or 1");
  if (!(x >= 0.0)) throw std::domain_error("bessel_j: x must be >= 0");
  if (x < 12.0) return bessel_series(order, x);
  return bessel_asymptotic(order, x);
}

double sine_integral(double x) {
  if (!std::isfinite(x)) throw std::domain_error("sine_integral: x must be finite");
  const double ax = std::abs(x);
  const double sign = x < 0 ? -1.0 : 1.0;
  if (ax == 0.0) return 0.0;
  if (ax < 50.0) {
    QuadOptions opts;
    opts.abs_tol = 1e-14;
    opts.frequency_hint = 1.0 / kTwoPi;
    auto sinc = [](double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; };
    return sign * integrate_1d(sinc, 0.0, ax, opts).value;
  }
  // Si(x) = pi/2 - f(x) cos x - g(x) sin x with the standard asymptotic
  // auxiliary series.
  const double inv2 = 1.0 / (ax * ax);
  double f = 0.0, g = 0.0;
  double tf = 1.0 / ax, tg = inv2;
  double last_f = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 30; ++k) {
    if (std::abs(tf) > last_f) break;
    last_f = std::abs(tf);
    f += tf;
    g += tg;
    tf *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) * inv2;
    tg *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) * inv2;
    if (std::abs(tf) < 1e-18) break;
  }
  return sign * (kPi / 2.0 - f * std::cos(ax) - g * std::sin(ax));
}

SiCi sine_cosine_integrals(double x) {
  if (!(x > 0.0)) throw std::domain_error("sine_cosine_integrals: x must be > 0");
  constexpr double eps = 1e-16;
  if (x <= 2.0) {
    // Power series.
    double si = 0.0, ci = 0.0;
    double term = 1.0;  // x^n / n!
    for (int n = 1; n < 100; ++n) {
      term *= x / n;
      const double contrib = term / n;
      if (n % 2 == 1) {
        si += ((n / 2) % 2 == 0 ? 1.0 : -1.0) * contrib;
      } else {
        ci += ((n / 2) % 2 == 0 ? 1.0 : -1.0) * contrib;
      }
      if (contrib < eps * std::max(std::abs(si), std::abs(ci)) && n > 4) break;
    }
    return {si, kEulerGamma + std::log(x) + ci};
  }
  // Continued fraction for E1(ix), modified Lentz.
  const double fpmin = 1e-300;
  cplx b(1.0, x);
  cplx c(1.0 / fpmin, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  return {kPi / 2.0 + h.imag(), -h.real()};
}

double cosine_integral(double x) { return sine_cosine_integrals(x).ci; }

cplx e(double x) {
  const double frac = x - std::nearbyint(x);
  const double a = kTwoPi * frac;
  return {std::cos(a), std::sin(a)};
}

cplx dirichlet_sum(double x, std::int64_t R, int j) {
  if (R < 0) throw std::domain_error("dirichlet_sum: R >= 0");
  if (j != 0 && j != 1) throw std::domain_error("dirichlet_sum: j must be 0 or 1");
  CompensatedSum<cplx> s;
  for (std::int64_t p = -R; p <= R; ++p) {
    if (j == 1 && p == 0) continue;
    const double w = (j == 0) ? 1.0 : static_cast<double>(p);
    // p * x reduced mod 1 in long double keeps the phase accurate for large p.
    const long double px = static_cast<long double>(p) * static_cast<long double>(x);
    const double frac = static_cast<double>(px - std::nearbyint(px));
    s.add(w * e(frac));
  }
  return s.value();
}

double distance_to_integer(double x) { return std::abs(x - std::nearbyint(x)); }

}  // namespace circle
