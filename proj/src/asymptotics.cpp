#include "circle/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circle/counting.hpp"
#include "circle/lattice.hpp"
#include "circle/quadrature.hpp"

namespace circle {

TruncationParams TruncationParams::make(std::int64_t Q, std::int64_t mu_max, std::int64_t nu_max,
                                        std::int64_t fourier_N) {
  TruncationParams p;
  p.Q = Q;
  p.R = (Q - 1) / 2;
  p.mu_max = mu_max > 0 ? mu_max : Q * Q;
  p.nu_max = nu_max > 0 ? nu_max : Q * Q;
  p.fourier_N = fourier_N > 0 ? fourier_N : p.mu_max;
  p.validate();
  return p;
}

void TruncationParams::validate() const {
  if (Q < 3 || Q % 2 == 0) throw std::domain_error("TruncationParams: Q must be odd and >= 3");
  if (Q != 2 * R + 1) throw std::domain_error("TruncationParams: Q must equal 2R + 1");
  if (fourier_N < Q) throw std::domain_error("TruncationParams: fourier_N must be >= Q");
  if (mu_max < 1 || nu_max < 1) throw std::domain_error("TruncationParams: cutoffs must be >= 1");
  if (mu_max > Q * Q || nu_max > Q * Q) {
    throw std::domain_error("TruncationParams: cutoffs must be <= Q^2");
  }
}

double disk_fourier_integral(double a, double b, double t) {
  if (!(t > 0.0)) throw std::domain_error("disk_fourier_integral: t must be > 0");
  const double s = a * a + b * b;
  if (s == 0.0) return kPi * t;
  const double arg = kTwoPi * std::sqrt(t * s);
  if (arg > 1e8) throw std::overflow_error("disk_fourier_integral: J1 argument exceeds 1e8");
  if (arg < 1e-4) {
    // sqrt(t/s) J1(2 pi sqrt(t s)) = pi t (1 - pi^2 t s / 2 + ...)
    return kPi * t * (1.0 - 0.5 * kPi * kPi * t * s);
  }
  return std::sqrt(t / s) * bessel_j(1, arg);
}

namespace {

void fill_report(ApproximationReport& rep, std::int64_t t) {
  rep.t = t;
  rep.exact_P = count_lattice(t, CountMethod::rows).count;
  rep.abs_error = std::abs(rep.approx_value - static_cast<double>(rep.exact_P));
  rep.normalized_error =
      rep.abs_error * static_cast<double>(rep.params.Q) / std::sqrt(static_cast<double>(t));
}

}  // namespace

ApproximationReport F_bessel(std::int64_t t, const TruncationParams& params) {
  params.validate();
  if (t < 1) throw std::domain_error("F_bessel: t must be >= 1");
  if (static_cast<double>(params.Q) > std::sqrt(static_cast<double>(t))) {
    throw std::domain_error("F_bessel: requires Q <= sqrt t");
  }
  const double td = static_cast<double>(t);
  const std::int64_t Q = params.Q, R = params.R;
  const double inv2q = 1.0 / (2.0 * static_cast<double>(Q));
  CompensatedSum<double> acc;
  for (std::int64_t p = -R; p <= R; ++p) {
    for (std::int64_t q = -R; q <= R; ++q) {
      acc.add(disk_fourier_integral(static_cast<double>(p), static_cast<double>(q), td));
      for (std::int64_t mu = -params.mu_max; mu <= params.mu_max; ++mu) {
        if (mu == 0) continue;
        const double a = static_cast<double>(p + mu * Q);
        acc.add(3.0 * disk_fourier_integral(a, static_cast<double>(q), td));
        for (std::int64_t nu = -params.nu_max; nu <= params.nu_max; ++nu) {
          if (nu == 0) continue;
          const double w = static_cast<double>(p) / static_cast<double>(mu) +
                           static_cast<double>(q) / static_cast<double>(nu);
          if (w == 0.0) continue;
          acc.add(-inv2q * w * disk_fourier_integral(a, static_cast<double>(q + nu * Q), td));
        }
      }
    }
  }
  ApproximationReport rep;
  rep.params = params;
  rep.approx_value = acc.value();
  fill_report(rep, t);
  return rep;
}

ApproximationReport F_fourier_series(std::int64_t t, const TruncationParams& params) {
  params.validate();
  if (t < 1) throw std::domain_error("F_fourier_series: t must be >= 1");
  const double td = static_cast<double>(t);
  const std::int64_t Q = params.Q, R = params.R, N = params.fourier_N;
  const double qd = static_cast<double>(Q);
  CompensatedSum<double> acc;
  for (std::int64_t p = -R; p <= R; ++p) {
    for (std::int64_t q = -R; q <= R; ++q) {
      const double pd = static_cast<double>(p), qq = static_cast<double>(q);
      acc.add(disk_fourier_integral(pd, qq, td));
      for (std::int64_t mu = -N; mu <= N; ++mu) {
        if (mu == 0) continue;
        const double md = static_cast<double>(mu);
        acc.add((1.5 + pd / (2.0 * md * qd)) * disk_fourier_integral(pd + md * qd, qq, td));
        acc.add((1.5 + qq / (2.0 * md * qd)) * disk_fourier_integral(pd, qq + md * qd, td));
        for (std::int64_t nu = -N; nu <= N; ++nu) {
          if (nu == 0) continue;
          const double nd = static_cast<double>(nu);
          const double w = pd / md + qq / nd;
          if (w == 0.0) continue;
          acc.add(-w / (2.0 * qd) * disk_fourier_integral(pd + md * qd, qq + nd * qd, td));
        }
      }
    }
  }
  ApproximationReport rep;
  rep.params = params;
  rep.approx_value = acc.value();
  fill_report(rep, t);
  return rep;
}

namespace {

// int_{y0}^{y1} e(k y) dy and int_{y0}^{y1} y e(k y) dy.
std::pair<cplx, cplx> moments(double k, double y0, double y1) {
  if (k == 0.0) return {cplx(y1 - y0), cplx(0.5 * (y1 * y1 - y0 * y0))};
  const double w = kTwoPi * k;
  const cplx iw(0.0, w);
  const cplx e0 = e(k * y0), e1 = e(k * y1);
  const cplx m0 = (e1 - e0) / iw;
  const cplx m1 = e1 * (y1 / iw + 1.0 / (w * w)) - e0 * (y0 / iw + 1.0 / (w * w));
  return {m0, m1};
}

// int_{-c}^{c} e(q y) psi1(Q y) dy, piecewise linear psi1.
cplx inner_sawtooth(double q, double c, double Q) {
  CompensatedSum<cplx> acc;
  const double lo = -c, hi = c;
  double y0 = lo;
  const auto kfirst = static_cast<std::int64_t>(std::floor(lo * Q)) + 1;
  for (std::int64_t k = kfirst;; ++k) {
    const double yb = static_cast<double>(k) / Q;
    const double y1 = std::min(yb, hi);
    if (y1 > y0) {
      const double j = static_cast<double>(k - 1);  // floor(Q y) on (y0, y1)
      const auto [m0, m1] = moments(q, y0, y1);
      acc.add(Q * m1 - (j + 0.5) * m0);
    }
    if (yb >= hi) break;
    y0 = yb;
  }
  return acc.value();
}

// int_{-c}^{c} e(k y) dy, real by symmetry.
double sym_moment(double k, double c) {
  if (k == 0.0) return 2.0 * c;
  return std::sin(kTwoPi * k * c) / (kPi * k);
}

// Same integral with psi replaced by its Fourier truncation at N terms.
cplx inner_fourier(double q, double c, double Q, std::int64_t N) {
  // psi^(N)(u) = -(1/(2 pi i)) sum_{n=1}^N (e(n u) - e(-n u)) / n
  CompensatedSum<double> acc;
  for (std::int64_t n = N; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    acc.add((sym_moment(q + nd * Q, c) - sym_moment(q - nd * Q, c)) / nd);
  }
  return -acc.value() / cplx(0.0, kTwoPi);
}

}  // namespace

QuadratureReport F_quadrature_report(std::int64_t t, const TruncationParams& params, PsiMode mode,
                                     double tol) {
  params.validate();
  if (t < 1 || t > 400) throw std::domain_error("F_quadrature: requires 1 <= t <= 400");
  if (!(tol > 0.0)) throw std::domain_error("F_quadrature: tol must be > 0");
  const double rt = std::sqrt(static_cast<double>(t));
  const std::int64_t R = params.R;
  const double Q = static_cast<double>(params.Q);
  const std::int64_t N = params.fourier_N;
  const std::size_t width = static_cast<std::size_t>(2 * R + 1);

  auto phi = [&](double u) {
    return mode == PsiMode::sawtooth ? psi1(u) : psi_fourier(u, FourierDepth(N));
  };

  // Per (p, q): the four disk terms (prefactors included) are integrated
  // over x, the eight circle terms over y or x; both use x or y = sqrt t
  // sin(theta) with Jacobian sqrt t cos(theta), which removes the square
  // root endpoint behavior.
  const cplx two_pi_i(0.0, kTwoPi);
  const cplx pi_i(0.0, kPi);
  auto integrand = [&](double th) -> cplx {
    const double s = rt * std::sin(th);
    const double c = rt * std::cos(th);
    const double jac = c;
    if (!(c > 0.0)) return cplx(0.0);
    std::vector<cplx> j0(width), j1(width);
    for (std::int64_t q = -R; q <= R; ++q) {
      const double qd = static_cast<double>(q);
      j0[q + R] = sym_moment(qd, c);
      j1[q + R] = mode == PsiMode::sawtooth ? inner_sawtooth(qd, c, Q) : inner_fourier(qd, c, Q, N);
    }
    const double phs = phi(Q * s);
    const double phc = phi(Q * c);
    const double phmc = phi(-Q * c);
    CompensatedSum<cplx> acc;
    for (std::int64_t p = -R; p <= R; ++p) {
      const double pd = static_cast<double>(p);
      const cplx ex = e(pd * s);
      for (std::int64_t q = -R; q <= R; ++q) {
        const double qd = static_cast<double>(q);
        // disk terms, x = s
        const cplx a1 = ex * j0[q + R];
        const cplx a2 = ex * phs * j0[q + R];
        const cplx a3 = ex * j1[q + R];
        const cplx a4 = ex * phs * j1[q + R];
        cplx v = a1 + two_pi_i * (pd / Q) * a2 + two_pi_i * (qd / Q) * a3 -
                 (4.0 * kPi * kPi * pd * qd / (Q * Q)) * a4;
        // circle terms; y-parameterized ones use y = s, x-parameterized x = s
        const cplx ey_p = e(pd * c + qd * s), ey_m = e(-pd * c + qd * s);
        const cplx ex_p = e(pd * s + qd * c), ex_m = e(pd * s - qd * c);
        const double k3 = 3.0 / (2.0 * Q);
        v += -k3 * ey_p * phc + k3 * ey_m * phmc - k3 * ex_p * phc + k3 * ex_m * phmc;
        const cplx cq = pi_i * qd / (Q * Q), cp = pi_i * pd / (Q * Q);
        v += -cq * ey_p * (phs * phc) + cq * ey_m * (phs * phmc);
        v += -cp * ex_p * (phs * phc) + cp * ex_m * (phs * phmc);
        acc.add(v);
      }
    }
    return jac * acc.value();
  };

  QuadOptions opts;
  opts.abs_tol = tol;
  opts.max_evaluations = 20'000'000;
  const double qrt = Q * rt;
  for (std::int64_t k = 0; static_cast<double>(k) < qrt; ++k) {
    const double r = static_cast<double>(k) / qrt;
    opts.breakpoints.push_back(std::asin(r));
    opts.breakpoints.push_back(-std::asin(r));
    opts.breakpoints.push_back(std::acos(r));
    opts.breakpoints.push_back(-std::acos(r));
  }
  double freq = 2.0 * static_cast<double>(R) * rt;
  if (mode == PsiMode::fourier) freq += static_cast<double>(N) * Q * rt;
  opts.frequency_hint = freq / kTwoPi;
  auto res = integrate_1d(integrand, -kPi / 2.0, kPi / 2.0, opts);
  QuadratureReport out;
  out.value = res.value.real();
  out.imag_residue = std::abs(res.value.imag());
  out.error_estimate = res.error_estimate;
  out.evaluations = res.evaluations;
  return out;
}

double F_quadrature(std::int64_t t, const TruncationParams& params, PsiMode mode, double tol) {
  return F_quadrature_report(t, params, mode, tol).value;
}

SmoothFunction2D dirichlet_field(std::int64_t Q) {
  if (Q < 1 || Q % 2 == 0) throw std::domain_error("dirichlet_field: Q must be odd and >= 1");
  const std::int64_t R = (Q - 1) / 2;
  const double qd = static_cast<double>(Q);
  // D(x) = (1/Q)(1 + 2 sum_{p=1}^R cos(2 pi p x / Q)) and its derivative.
  auto d0 = [=](double x) {
    double s = 1.0;
    for (std::int64_t p = 1; p <= R; ++p) s += 2.0 * std::cos(kTwoPi * p * x / qd);
    return s / qd;
  };
  auto d1 = [=](double x) {
    double s = 0.0;
    for (std::int64_t p = 1; p <= R; ++p) {
      const double w = kTwoPi * p / qd;
      s -= 2.0 * w * std::sin(w * x);
    }
    return s / qd;
  };
  SmoothFunction2D f;
  f.value = [=](double x, double y) { return cplx(d0(x) * d0(y)); };
  f.dx = [=](double x, double y) { return cplx(d1(x) * d0(y)); };
  f.dy = [=](double x, double y) { return cplx(d0(x) * d1(y)); };
  f.dxy = [=](double x, double y) { return cplx(d1(x) * d1(y)); };
  f.frequency_hint = static_cast<double>(R) / qd;
  return f;
}

TvsFReport compare_T_vs_F(std::int64_t t, const TruncationParams& params, double tol) {
  params.validate();
  if (t < 1 || t > 400) throw std::domain_error("compare_T_vs_F: requires 1 <= t <= 400");
  TvsFReport rep;
  const auto poly = build_refined_polygon(t, params.Q);
  rep.T_value = T_polygon(poly, dirichlet_field(params.Q), tol).T_value.real();
  rep.F_value = F_quadrature(t, params, PsiMode::sawtooth, tol);
  rep.difference = std::abs(rep.T_value - rep.F_value);
  const double lq = std::log(static_cast<double>(params.Q));
  rep.scale = std::sqrt(static_cast<double>(t)) / static_cast<double>(params.Q) * lq * lq;
  rep.ratio = rep.difference / rep.scale;
  rep.exact_P = count_lattice(t, CountMethod::rows).count;
  return rep;
}

}  // namespace circle
