#pragma once

// One-dimensional Euler-Maclaurin summation, the periodic-Bernoulli
// expansion, the edge constant a_L and the planar functional T(Delta, f).

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "circle/lattice.hpp"
#include "circle/numerics.hpp"

namespace circle {

using RealFunction = std::function<double(double)>;
using Field2D = std::function<cplx(double, double)>;

/// sum_{a < p <= b} phi(p) written as
///   int phi + int phi' psi + psi(a) phi(a) - psi(b) phi(b)
/// with the floor-convention sawtooth (-1/2 at integers).
double em1d(const RealFunction& phi, const RealFunction& dphi, double a, double b,
            double tol = 1e-12);

/// Expansion to depth N with periodic Bernoulli functions. derivatives[j]
/// is phi^(j); at least depth + 1 handles are required. Integers at the
/// endpoints are weighted 1/2.
double em1d_expansion(const std::vector<RealFunction>& derivatives, double a, double b, int depth,
                      double tol = 1e-12);

struct EdgeConstant {
  double value = 0.0;
  /// Largest disagreement between successive extrapolated ladder values.
  double ladder_spread = 0.0;
  std::vector<double> ladder;  // extrapolated value per rung pair
};

/// a_L for the line of slope s, as minus the eps -> 0 limit of
/// int_0^{1/2} delta_eps(u) psi_eps(s u) du. Evaluated on a decreasing
/// eps ladder with Richardson extrapolation in sqrt(eps). Throws
/// std::runtime_error if the ladder disagrees by more than 1e-4.
EdgeConstant a_L_ladder(double slope);

/// a_L for slope m2 / m1 (m1 != 0).
double a_L(std::int64_t m2, std::int64_t m1);

/// C^2 field with partial derivatives. frequency_hint is the fastest
/// oscillation in cycles per unit length.
struct SmoothFunction2D {
  Field2D value;
  Field2D dx;
  Field2D dy;
  Field2D dxy;
  double frequency_hint = 0.0;
};

/// e(a x + b y) with its partial derivatives.
SmoothFunction2D plane_wave(double a, double b);

struct Em2dReport {
  cplx T_value;
  /// int f, int f_x psi(x), int f_y psi(y), int f_xy psi(x) psi(y).
  std::array<cplx, 4> area_terms{};
  /// -sum n1 int_E f psi(x), -sum n2 int_E f psi(y), and the D_{n^t} term.
  std::array<cplx, 3> edge_terms{};
  cplx lattice_sum;
  cplx weighted_sum;
  double boundary_abs_sum = 0.0;
  double quadrature_error = 0.0;
};

/// T(Delta, f) with every component filled, plus the three lattice sums.
Em2dReport T_polygon(const LatticePolygon& polygon, const SmoothFunction2D& f, double tol = 1e-8);

}  // namespace circle
