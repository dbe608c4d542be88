#pragma once

// Near-circle apparatus: the bump v, the oscillatory double sum E(t) by
// direct quadrature and in its reduced cosine-integral form, the
// exponential-sum functional L(t, R), and the sawtooth sum along the circle.

#include <cstdint>

namespace circle {

struct SplitParams {
  double eta = 0.125;
  std::int64_t tau = 1;    // floor(t^eta)
  std::int64_t alpha = 0;  // floor(sqrt(t/2))
  std::int64_t m_min = 1;  // m = 0 rows vanish identically
  std::int64_t m_max = 0;  // alpha
  std::int64_t n_min = 0;  // ceil(sqrt t / 2)
  std::int64_t n_max = 0;  // floor(2 sqrt t)

  /// eta in (0, 1/8].
  static SplitParams make(std::int64_t t, double eta = 0.125);
  void validate() const;
};

/// Default near-circle cutoff floor(t^(1/4 + eps)), at least 1.
std::int64_t default_R(std::int64_t t, double eps = 0.05);

/// C-infinity bump on [0, pi]: 1 on [pi/4, pi/2], 0 on [0, pi/8] and
/// [3 pi/4, pi].
double bump_v(double theta);

enum class InnerMode { direct, stationary };

/// Direct mode: int_0^pi r^(-1/2) v sin^(1/2) cos
///   cos 2 pi (r (sqrt t csc - m cot - n) - 1/8) dtheta.
/// Stationary mode: the leading term m sqrt(t - m^2) / (r t^(5/4))
///   cos 2 pi r (sqrt(t - m^2) - n).
double inner_integral(double r, std::int64_t m, std::int64_t n, std::int64_t t, InnerMode mode,
                      double tol = 1e-11);

/// int_1^R cos(2 pi r w) / r dr from cosine integrals; ln R at w = 0.
double log_cosine_integral(double w, double R);

enum class EMode { direct, reduced };

/// Sum over the near-circle region. Direct: t <= 100. Reduced: t <= 1e6.
double E_sum(std::int64_t t, std::int64_t R, EMode mode, double tol = 1e-9);

/// One term of L: int_0^alpha cos 2 pi (a x + q sqrt(t - x^2)) dx.
double L_term(std::int64_t t, double a, double q, double tol = 1e-11);

/// sum over p, q in [-R, R] \ {0}, |mu| <= mu_max of
/// (1/|q|) L_term(t, p + mu Q, q), Q = 2R + 1. mu_max <= Q^2, t <= 1e4.
double L_sum(std::int64_t t, std::int64_t R, std::int64_t mu_max, double tol = 1e-11);

/// sum_{m=1}^{alpha} psi(sqrt(t - m^2)) with psi = -1/2 at the integers.
double psi_circle_sum(std::int64_t t);

/// psi_circle_sum(t) - (pi t - P(t)) / 8.
double pick_check(std::int64_t t);

struct NearFarReport {
  std::int64_t t = 0;
  std::int64_t R = 0;
  bool has_direct = false;  // direct E only for t <= 100
  double E_direct = 0.0;
  double E_reduced = 0.0;
  bool has_L = false;  // L only for t <= 1e4
  double L_value = 0.0;
  double psi_sum = 0.0;
  double pick_residual = 0.0;
};

NearFarReport nearfar_report(std::int64_t t, std::int64_t R, std::int64_t mu_max, double tol = 1e-9);

}  // namespace circle
