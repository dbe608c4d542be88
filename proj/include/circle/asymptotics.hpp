#pragma once

// Analytic approximations to P(t): the disk Fourier/Bessel identity, the
// Bessel-sum form of F(t, Q), a direct quadrature of the defining
// expression for F(t, Q), and the comparison with T(Delta_{t,Q}, f).

#include <cstdint>

#include "circle/euler_maclaurin.hpp"
#include "circle/numerics.hpp"

namespace circle {

struct TruncationParams {
  std::int64_t Q = 3;
  std::int64_t R = 1;
  std::int64_t fourier_N = 9;
  std::int64_t mu_max = 9;
  std::int64_t nu_max = 9;

  /// Q odd >= 3; cutoffs default to Q^2. fourier_N defaults to mu_max.
  static TruncationParams make(std::int64_t Q, std::int64_t mu_max = 0, std::int64_t nu_max = 0,
                               std::int64_t fourier_N = 0);
  /// Throws std::domain_error when an invariant fails.
  void validate() const;
};

struct ApproximationReport {
  std::int64_t t = 0;
  TruncationParams params;
  double approx_value = 0.0;
  std::int64_t exact_P = 0;
  double abs_error = 0.0;
  double normalized_error = 0.0;  // abs_error Q / sqrt t
};

/// int over the disk of radius sqrt t of e(a x + b y):
/// pi t at the origin, else sqrt(t/(a^2+b^2)) J1(2 pi sqrt(t (a^2+b^2))).
double disk_fourier_integral(double a, double b, double t);

/// The Bessel-sum form with its three families: plain (p, q)
/// terms, 3 sum_mu of the mu-shifted terms, and the doubly shifted terms
/// weighted by -(1/2Q)(p/mu + q/nu). Requires Q <= sqrt t.
ApproximationReport F_bessel(std::int64_t t, const TruncationParams& params);

/// Fourier transcription of the quadrature definition with psi replaced by
/// its truncation at N = params.fourier_N. Each single-shift family carries
/// the coefficient 3/2 + p/(2 mu Q) (resp. q/(2 nu Q)); the doubly shifted
/// family is as in F_bessel with both cutoffs equal to N.
ApproximationReport F_fourier_series(std::int64_t t, const TruncationParams& params);

enum class PsiMode { sawtooth, fourier };

struct QuadratureReport {
  double value = 0.0;
  double imag_residue = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Term-by-term quadrature of F(t, Q): four psi-weighted disk integrals and
/// eight psi-weighted circle integrals per (p, q). In fourier mode psi is
/// replaced by its truncation at params.fourier_N. t <= 400.
QuadratureReport F_quadrature_report(std::int64_t t, const TruncationParams& params,
                                     PsiMode mode = PsiMode::sawtooth, double tol = 1e-9);
double F_quadrature(std::int64_t t, const TruncationParams& params,
                    PsiMode mode = PsiMode::sawtooth, double tol = 1e-9);

/// f(m, n) = (1/Q^2) sum_{p,q} e((p m + q n)/Q) as a smooth field.
SmoothFunction2D dirichlet_field(std::int64_t Q);

struct TvsFReport {
  double T_value = 0.0;
  double F_value = 0.0;
  double difference = 0.0;  // |T - F|
  double scale = 0.0;       // (sqrt t / Q) ln^2 Q
  double ratio = 0.0;       // difference / scale
  std::int64_t exact_P = 0;
};

/// |T(Delta_{t,Q}, f) - F_quadrature(t, Q)| against (sqrt t / Q) ln^2 Q. Q > 1,
/// t <= 400.
TvsFReport compare_T_vs_F(std::int64_t t, const TruncationParams& params, double tol = 1e-8);

}  // namespace circle
