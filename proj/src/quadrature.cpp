#include "circle/quadrature.hpp"

#include <cmath>

namespace circle {

QuadratureResult<cplx> integrate_disk(const std::function<cplx(double, double)>& g, double t,
                                      double tol, double frequency_hint) {
  if (!(t > 0.0)) throw std::domain_error("integrate_disk: t must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("integrate_disk: tol must be > 0");
  const double radius = std::sqrt(t);
  std::size_t evaluations = 0;
  double inner_err = 0.0;

  // Inner angular integrals carry a factor r <= radius and the outer
  // interval has length radius, so their tolerance is scaled by 1/t.
  QuadOptions inner;
  inner.abs_tol = 0.1 * tol / (t + 1.0);
  QuadOptions outer;
  outer.abs_tol = 0.5 * tol;
  outer.frequency_hint = frequency_hint;

  auto ring = [&](double r) -> cplx {
    QuadOptions o = inner;
    // angular frequency at radius r, in cycles per radian
    o.frequency_hint = std::max(frequency_hint * r, 1.0 / kPi);
    auto res = integrate_1d(
        [&](double th) { return g(r * std::cos(th), r * std::sin(th)); }, 0.0, kTwoPi, o);
    evaluations += res.evaluations;
    inner_err = std::max(inner_err, res.error_estimate);
    return r * res.value;
  };
  auto res = integrate_1d(ring, 0.0, radius, outer);
  QuadratureResult<cplx> out;
  out.value = res.value;
  out.error_estimate = res.error_estimate + inner_err * t;
  out.evaluations = evaluations;
  return out;
}

}  // namespace circle
