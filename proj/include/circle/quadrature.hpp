#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature over intervals and the disk.
//
// The integrand value type may be double, cplx or CVec<N>. Refinement is
// global: the panel with the largest error estimate is bisected until the
// summed estimate meets the tolerance. Ties are broken by panel position,
// so identical inputs produce bit-identical results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "circle/numerics.hpp"

namespace circle {

/// Fixed-size complex vector, used to integrate several integrands that
/// share expensive evaluations in one pass.
template <std::size_t N>
struct CVec {
  std::array<cplx, N> v{};

  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  CVec& operator+=(const CVec& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < N; ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend CVec operator*(double s, CVec a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
};

/// Run-time sized counterpart of CVec.
struct CDyn {
  std::vector<cplx> v;

  CDyn() = default;
  explicit CDyn(std::size_t n) : v(n) {}
  std::size_t size() const { return v.size(); }
  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  friend CDyn operator+(CDyn a, const CDyn& b) {
    if (a.v.size() < b.v.size()) a.v.resize(b.v.size());
    for (std::size_t i = 0; i < b.v.size(); ++i) a.v[i] += b.v[i];
    return a;
  }
  friend CDyn operator-(CDyn a, const CDyn& b) {
    if (a.v.size() < b.v.size()) a.v.resize(b.v.size());
    for (std::size_t i = 0; i < b.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend CDyn operator*(double s, CDyn a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
};

inline double quad_norm(double x) { return std::abs(x); }
inline double quad_norm(const cplx& x) { return std::abs(x); }
inline double quad_norm(const CDyn& x) {
  double m = 0.0;
  for (const auto& c : x.v) m = std::max(m, std::abs(c));
  return m;
}
template <std::size_t N>
double quad_norm(const CVec<N>& x) {
  double m = 0.0;
  for (const auto& c : x.v) m = std::max(m, std::abs(c));
  return m;
}

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  /// Fastest oscillation present, in cycles per unit length. Initial
  /// panels span at most half a period.
  double frequency_hint = 0.0;
  /// Interior points where the integrand is not smooth.
  std::vector<double> breakpoints;
  std::size_t max_evaluations = 4'000'000;
  bool throw_on_failure = true;
};

template <class V>
struct QuadratureResult {
  V value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule (abscissae kXgk[1], kXgk[3], kXgk[5], kXgk[7]).
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
};

template <class V, class F>
Panel<V> gauss_kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  V fc = f(c);
  V kron = kWgk[7] * fc;
  V gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    V f1 = f(c - dx);
    V f2 = f(c + dx);
    V s = f1 + f2;
    kron = kron + kWgk[j] * s;
    if (j % 2 == 1) gauss = gauss + kWg[j / 2] * s;
  }
  kron = h * kron;
  gauss = h * gauss;
  double err = quad_norm(kron - gauss);
  return {a, b, kron, err};
}

}  // namespace detail

/// Adaptive integral of f over [a, b].
template <class F>
auto integrate_1d(F&& f, double a, double b, const QuadOptions& opts = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using V = std::decay_t<std::invoke_result_t<F&, double>>;
  using detail::Panel;
  if (!(a <= b)) throw std::domain_error("integrate_1d: requires a <= b");
  if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0)) {
    throw std::domain_error("integrate_1d: tolerance must be positive");
  }
  QuadratureResult<V> out;
  if (a == b) {
    out.value = 0.0 * f(a);
    out.evaluations = 1;
    return out;
  }

  std::vector<double> cuts{a};
  {
    std::vector<double> bp;
    for (double x : opts.breakpoints) {
      if (x > a && x < b) bp.push_back(x);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    bp.push_back(b);
    double prev = a;
    for (double x : bp) {
      double len = x - prev;
      std::size_t pieces = 1;
      if (opts.frequency_hint > 0.0) {
        pieces = static_cast<std::size_t>(std::ceil(2.0 * opts.frequency_hint * len));
        pieces = std::max<std::size_t>(pieces, 1);
      }
      for (std::size_t k = 1; k < pieces; ++k) {
        cuts.push_back(prev + len * static_cast<double>(k) / static_cast<double>(pieces));
      }
      cuts.push_back(x);
      prev = x;
    }
  }

  auto worse = [](const Panel<V>& x, const Panel<V>& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel<V>, std::vector<Panel<V>>, decltype(worse)> heap(worse);
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    auto p = detail::gauss_kronrod15<V>(f, cuts[i], cuts[i + 1]);
    out.evaluations += 15;
    total_err += p.error;
    heap.push(std::move(p));
  }

  auto current_value = [&]() {
    // Panels are summed in position order for reproducibility.
    std::vector<Panel<V>> all;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    V s = 0.0 * all.front().value;
    for (const auto& p : all) s = s + p.value;
    return s;
  };

  auto target = [&](const V& v) { return std::max(opts.abs_tol, opts.rel_tol * quad_norm(v)); };

  V value = current_value();
  while (total_err > target(value)) {
    if (out.evaluations + 30 > opts.max_evaluations) {
      out.converged = false;
      break;
    }
    Panel<V> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    auto left = detail::gauss_kronrod15<V>(f, worst.a, mid);
    auto right = detail::gauss_kronrod15<V>(f, mid, worst.b);
    out.evaluations += 30;
    total_err += left.error + right.error - worst.error;
    value = value + (left.value + right.value - worst.value);
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  // Recompute the error sum exactly to avoid drift from the running update.
  {
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      e += copy.top().error;
      copy.pop();
    }
    total_err = e;
  }
  out.value = current_value();
  out.error_estimate = total_err;
  if (!out.converged && opts.throw_on_failure) {
    throw QuadratureError("integrate_1d: refinement budget exhausted on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "], error estimate " +
                          std::to_string(total_err));
  }
  return out;
}

/// Integral of g(x, y) over the disk x^2 + y^2 <= t, in polar coordinates.
/// frequency_hint is the largest spatial frequency of g (cycles per unit).
QuadratureResult<cplx> integrate_disk(const std::function<cplx(double, double)>& g, double t,
                                      double tol, double frequency_hint = 0.0);

}  // namespace circle
