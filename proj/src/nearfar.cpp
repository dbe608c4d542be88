#include "circle/nearfar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circle/counting.hpp"
#include "circle/lattice.hpp"
#include "circle/numerics.hpp"
#include "circle/quadrature.hpp"

namespace circle {

SplitParams SplitParams::make(std::int64_t t, double eta) {
  if (t < 1) throw std::domain_error("SplitParams: t must be >= 1");
  SplitParams s;
  s.eta = eta;
  const double td = static_cast<double>(t);
  s.tau = static_cast<std::int64_t>(std::floor(std::pow(td, eta)));
  s.alpha = isqrt(t / 2);
  s.m_min = 1;
  s.m_max = s.alpha;
  // n in [sqrt t / 2, 2 sqrt t]: n >= ceil(sqrt t / 2) iff 4 n^2 >= t
  std::int64_t lo = isqrt(t / 4);
  while (4 * lo * lo < t) ++lo;
  s.n_min = lo;
  s.n_max = isqrt(4 * t);
  s.validate();
  return s;
}

void SplitParams::validate() const {
  if (!(eta > 0.0 && eta <= 0.125)) throw std::domain_error("SplitParams: eta must lie in (0, 1/8]");
  if (tau < 1) throw std::domain_error("SplitParams: tau must be >= 1");
  if (alpha < 0 || m_max != alpha) throw std::domain_error("SplitParams: inconsistent alpha");
}

std::int64_t default_R(std::int64_t t, double eps) {
  if (t < 1) throw std::domain_error("default_R: t must be >= 1");
  const auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(t), 0.25 + eps)));
  return r < 1 ? 1 : r;
}

namespace {

// 0 for x <= 0, 1 for x >= 1, smooth in between.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

bool is_square(std::int64_t n, std::int64_t& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

}  // namespace

double bump_v(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::domain_error("bump_v: theta must lie in [0, pi]");
  if (theta <= kPi / 2.0) return smooth_step((theta - kPi / 8.0) / (kPi / 8.0));
  return smooth_step((3.0 * kPi / 4.0 - theta) / (kPi / 4.0));
}

double inner_integral(double r, std::int64_t m, std::int64_t n, std::int64_t t, InnerMode mode,
                      double tol) {
  if (!(r >= 1.0)) throw std::domain_error("inner_integral: r must be >= 1");
  if (t < 1 || m < 0 || m * m > t) throw std::domain_error("inner_integral: requires 0 <= m^2 <= t");
  const double td = static_cast<double>(t);
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  if (mode == InnerMode::stationary) {
    const double s = std::sqrt(td - md * md);
    return md * s / (r * std::pow(td, 1.25)) * std::cos(kTwoPi * r * (s - nd));
  }
  const double rt = std::sqrt(td);
  const double amp = 1.0 / std::sqrt(r);
  auto g = [&](double th) {
    const double v = bump_v(th);
    if (v == 0.0) return 0.0;
    const double sn = std::sin(th), cs = std::cos(th);
    const double phase = rt / sn - md * cs / sn - nd;
    const double x = r * phase - 0.125;
    // reduce before multiplying by 2 pi to keep the argument small
    const double frac = x - std::floor(x);
    return amp * v * std::sqrt(sn) * cs * std::cos(kTwoPi * frac);
  };
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.breakpoints = {kPi / 4.0, kPi / 2.0};
  // |phase'| = csc^2 |m - sqrt t cos| peaks at an end of the support
  auto slope = [&](double th) {
    const double sn = std::sin(th);
    return std::abs(md - rt * std::cos(th)) / (sn * sn);
  };
  opts.frequency_hint = r * std::max(slope(kPi / 8.0), slope(3.0 * kPi / 4.0)) / kTwoPi;
  return integrate_1d(g, kPi / 8.0, 3.0 * kPi / 4.0, opts).value;
}

double log_cosine_integral(double w, double R) {
  if (!(R >= 1.0)) throw std::domain_error("log_cosine_integral: R must be >= 1");
  if (w == 0.0) return std::log(R);
  const double a = kTwoPi * std::abs(w);
  return cosine_integral(a * R) - cosine_integral(a);
}

double E_sum(std::int64_t t, std::int64_t R, EMode mode, double tol) {
  if (t < 1) throw std::domain_error("E_sum: t must be >= 1");
  if (R < 1) throw std::domain_error("E_sum: R must be >= 1");
  if (mode == EMode::direct && t > 100) throw std::domain_error("E_sum: direct mode needs t <= 100");
  if (t > 1'000'000) throw std::domain_error("E_sum: reduced mode needs t <= 1e6");
  const auto sp = SplitParams::make(t);
  const double td = static_cast<double>(t);
  const double Rd = static_cast<double>(R);
  const double t14 = std::pow(td, 0.25);
  CompensatedSum<double> acc;
  for (std::int64_t m = sp.m_min; m <= sp.m_max; ++m) {
    const std::int64_t s2 = t - m * m;
    std::int64_t root = 0;
    const bool sq = is_square(s2, root);
    const double s = std::sqrt(static_cast<double>(s2));
    for (std::int64_t n = sp.n_min; n <= sp.n_max; ++n) {
      const double nd = static_cast<double>(n), md = static_cast<double>(m);
      if (mode == EMode::reduced) {
        const double w = (sq && root == n) ? 0.0 : s - nd;
        acc.add(s / (t14 * nd) * log_cosine_integral(w, Rd));
        continue;
      }
      if (R == 1) continue;
      QuadOptions opts;
      opts.abs_tol = tol * md * nd / td;
      const double inner_tol = 0.1 * opts.abs_tol / (Rd - 1.0);
      auto outer = [&](double r) {
        return inner_integral(r, m, n, t, InnerMode::direct, inner_tol);
      };
      // the stationary point dominates: frequency |sqrt(t - m^2) - n| in r
      opts.frequency_hint = std::abs(s - nd) + 1.0;
      acc.add(td / (md * nd) * integrate_1d(outer, 1.0, Rd, opts).value);
    }
  }
  return acc.value();
}

double L_term(std::int64_t t, double a, double q, double tol) {
  if (t < 1) throw std::domain_error("L_term: t must be >= 1");
  const double td = static_cast<double>(t);
  const double alpha = static_cast<double>(isqrt(t / 2));
  if (alpha == 0.0) return 0.0;
  auto g = [&](double x) {
    const double ph = a * x + q * std::sqrt(td - x * x);
    return std::cos(kTwoPi * (ph - std::floor(ph)));
  };
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.frequency_hint = std::abs(a) + std::abs(q);
  return integrate_1d(g, 0.0, alpha, opts).value;
}

double L_sum(std::int64_t t, std::int64_t R, std::int64_t mu_max, double tol) {
  if (t < 1 || t > 10'000) throw std::domain_error("L_sum: requires 1 <= t <= 1e4");
  if (R < 1) throw std::domain_error("L_sum: R must be >= 1");
  const std::int64_t Q = 2 * R + 1;
  if (mu_max < 0 || mu_max > Q * Q) throw std::domain_error("L_sum: requires 0 <= mu_max <= Q^2");
  CompensatedSum<double> acc;
  for (std::int64_t p = -R; p <= R; ++p) {
    if (p == 0) continue;
    for (std::int64_t q = -R; q <= R; ++q) {
      if (q == 0) continue;
      for (std::int64_t mu = -mu_max; mu <= mu_max; ++mu) {
        const double a = static_cast<double>(p + mu * Q);
        acc.add(L_term(t, a, static_cast<double>(q), tol) / static_cast<double>(std::abs(q)));
      }
    }
  }
  return acc.value();
}

double psi_circle_sum(std::int64_t t) {
  if (t < 2) throw std::domain_error("psi_circle_sum: t must be >= 2");
  const std::int64_t alpha = isqrt(t / 2);
  CompensatedSum<double> acc;
  for (std::int64_t m = 1; m <= alpha; ++m) {
    const std::int64_t s2 = t - m * m;
    std::int64_t k = 0;
    if (is_square(s2, k)) {
      acc.add(-0.5);
    } else {
      const double f = std::sqrt(static_cast<double>(s2)) - static_cast<double>(k);
      acc.add(f - 0.5);
    }
  }
  return acc.value();
}

double pick_check(std::int64_t t) {
  const double d = delta(t);  // P(t) - pi t
  return psi_circle_sum(t) + d / 8.0;
}

NearFarReport nearfar_report(std::int64_t t, std::int64_t R, std::int64_t mu_max, double tol) {
  NearFarReport rep;
  rep.t = t;
  rep.R = R;
  if (t <= 100) {
    rep.has_direct = true;
    rep.E_direct = E_sum(t, R, EMode::direct, tol);
  }
  rep.E_reduced = E_sum(t, R, EMode::reduced, tol);
  if (t <= 10'000) {
    rep.has_L = true;
    rep.L_value = L_sum(t, R, mu_max, tol);
  }
  rep.psi_sum = psi_circle_sum(t);
  rep.pick_residual = pick_check(t);
  return rep;
}

}  // namespace circle
