#include "circle/euler_maclaurin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "circle/quadrature.hpp"

namespace circle {

namespace {

std::vector<double> integers_between(double a, double b) {
  std::vector<double> out;
  for (double k = std::floor(a) + 1.0; k < b; k += 1.0) out.push_back(k);
  return out;
}

// Gaussian-smoothed sawtooth: psi1 convolved with the N(0, eps) density.
double smoothed_sawtooth(double u, double eps) {
  const double f = u - std::nearbyint(u);
  const double s = std::sqrt(2.0 * eps);
  double acc = f - 0.5 * std::erf(f / s);
  for (int n = 1; n <= 3; ++n) {
    // Phi((f-n)/sqrt eps) - Phi(-n/sqrt eps) and the mirror term for -n.
    acc -= 0.5 * (std::erfc((n - f) / s) - std::erfc(n / s));
    acc -= 0.5 * (std::erfc(n / s) - std::erfc((n + f) / s));
  }
  return acc;
}

double smoothed_integral(double slope, double eps) {
  const double se = std::sqrt(eps);
  const double upper = std::min(0.5, 12.0 * se);
  QuadOptions opts;
  opts.abs_tol = 1e-14;
  for (double m : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) opts.breakpoints.push_back(m * se);
  auto g = [&](double u) {
    const double density = std::exp(-u * u / (2.0 * eps)) / std::sqrt(kTwoPi * eps);
    return density * smoothed_sawtooth(slope * u, eps);
  };
  return integrate_1d(g, 0.0, upper, opts).value;
}

}  // namespace

double em1d(const RealFunction& phi, const RealFunction& dphi, double a, double b, double tol) {
  if (!(a <= b)) throw std::domain_error("em1d: requires a <= b");
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.breakpoints = integers_between(a, b);
  const double main = integrate_1d([&](double x) { return phi(x); }, a, b, opts).value;
  const double corr =
      integrate_1d([&](double x) { return dphi(x) * sawtooth(x); }, a, b, opts).value;
  return main + corr + sawtooth(a) * phi(a) - sawtooth(b) * phi(b);
}

double em1d_expansion(const std::vector<RealFunction>& derivatives, double a, double b, int depth,
                      double tol) {
  if (depth < 1) throw std::domain_error("em1d_expansion: depth must be >= 1");
  if (derivatives.size() < static_cast<std::size_t>(depth) + 1) {
    throw std::domain_error("em1d_expansion: need depth + 1 derivative handles");
  }
  if (!(a <= b)) throw std::domain_error("em1d_expansion: requires a <= b");
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.breakpoints = integers_between(a, b);
  double total = integrate_1d([&](double x) { return derivatives[0](x); }, a, b, opts).value;
  for (int j = 1; j <= depth; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    total += sign * (psi_k(b, j) * derivatives[j - 1](b) - psi_k(a, j) * derivatives[j - 1](a));
  }
  const double rsign = ((depth + 1) % 2 == 0) ? 1.0 : -1.0;
  const auto& top = derivatives[depth];
  total += rsign *
           integrate_1d([&](double x) { return psi_k(x, depth) * top(x); }, a, b, opts).value;
  return total;
}

EdgeConstant a_L_ladder(double slope) {
  if (!std::isfinite(slope)) throw std::domain_error("a_L: slope must be finite");
  EdgeConstant out;
  if (slope == 0.0) {
    out.ladder = {0.0};
    return out;
  }
  // Keep slope * sqrt(eps) small so only the n = 0 jump is seen.
  const double s = std::abs(slope);
  const double eps0 = std::min(1e-2, (0.1 / s) * (0.1 / s));
  constexpr int kRungs = 5;
  const double ratio = std::sqrt(10.0);
  std::vector<double> values;
  double eps = eps0;
  for (int k = 0; k < kRungs; ++k, eps /= 10.0) values.push_back(smoothed_integral(slope, eps));
  // I(eps) = -a + c sqrt(eps) + exponentially small terms.
  for (int k = 0; k + 1 < kRungs; ++k) {
    out.ladder.push_back(-(ratio * values[k + 1] - values[k]) / (ratio - 1.0));
  }
  const auto [lo, hi] = std::minmax_element(out.ladder.begin(), out.ladder.end());
  out.ladder_spread = *hi - *lo;
  out.value = out.ladder.back();
  if (out.ladder_spread > 1e-4) {
    throw std::runtime_error("a_L: eps ladder did not converge (spread " +
                             std::to_string(out.ladder_spread) + ")");
  }
  return out;
}

double a_L(std::int64_t m2, std::int64_t m1) {
  if (m1 == 0) throw std::domain_error("a_L: m1 must be nonzero");
  return a_L_ladder(static_cast<double>(m2) / static_cast<double>(m1)).value;
}

SmoothFunction2D plane_wave(double a, double b) {
  SmoothFunction2D f;
  const cplx ia(0.0, kTwoPi * a), ib(0.0, kTwoPi * b);
  f.value = [=](double x, double y) { return e(a * x + b * y); };
  f.dx = [=](double x, double y) { return ia * e(a * x + b * y); };
  f.dy = [=](double x, double y) { return ib * e(a * x + b * y); };
  f.dxy = [=](double x, double y) { return ia * ib * e(a * x + b * y); };
  f.frequency_hint = std::hypot(a, b);
  return f;
}

namespace {

// psi1 at an integer plus k m / a, exactly.
double psi1_rational(std::int64_t k, std::int64_t m, std::int64_t a) {
  std::int64_t r = (k * m) % a;
  if (r < 0) r += a;
  if (r == 0) return 0.0;
  return static_cast<double>(r) / static_cast<double>(a) - 0.5;
}

class SlopeCache {
 public:
  double get(std::int64_t num, std::int64_t den) {
    // den > 0 by construction
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    const auto key = std::make_pair(num / g, den / g);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = a_L(key.first, key.second);
    cache_.emplace(key, v);
    return v;
  }

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, double> cache_;
};

// lim int_E f delta(along) psi(across) for the coordinate "along" crossing
// integers. along_step = |m_along|, across_step = m_across.
cplx delta_term(const Edge& e, const Field2D& f, bool x_is_delta, SlopeCache& slopes) {
  const std::int64_t m_along = x_is_delta ? e.primitive.x : e.primitive.y;
  const std::int64_t m_across = x_is_delta ? e.primitive.y : e.primitive.x;
  const std::int64_t a = m_along < 0 ? -m_along : m_along;
  const double aL = slopes.get(m_across, a);
  const std::int64_t last = e.lambda * a;
  const double sx = static_cast<double>(e.start.x), sy = static_cast<double>(e.start.y);
  const double mx = static_cast<double>(e.primitive.x), my = static_cast<double>(e.primitive.y);
  CompensatedSum<cplx> acc;
  for (std::int64_t k = 0; k <= last; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(a);
    const double x = sx + u * mx, y = sy + u * my;
    double weight;
    if (k == 0) weight = -aL;
    else if (k == last) weight = aL;
    else weight = psi1_rational(k, m_across, a);
    if (weight != 0.0) acc.add(weight * f(x, y));
  }
  return acc.value() / static_cast<double>(a);
}

}  // namespace

Em2dReport T_polygon(const LatticePolygon& polygon, const SmoothFunction2D& f, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("T_polygon: tol must be > 0");
  if (!f.value || !f.dx || !f.dy || !f.dxy) {
    throw std::domain_error("T_polygon: field and all partial derivatives are required");
  }
  Em2dReport rep;
  const auto& edges = polygon.edges();
  double qerr = 0.0;

  // Area integrals, iterated: x outside, y inside.
  {
    std::vector<double> xbreaks;
    for (const auto& v : polygon.vertices()) xbreaks.push_back(static_cast<double>(v.x));
    for (const auto& e : edges) {
      const std::int64_t dy = e.end.y - e.start.y;
      if (dy == 0) continue;
      const std::int64_t ylo = std::min(e.start.y, e.end.y), yhi = std::max(e.start.y, e.end.y);
      const double dx = static_cast<double>(e.end.x - e.start.x);
      for (std::int64_t y = ylo + 1; y < yhi; ++y) {
        xbreaks.push_back(static_cast<double>(e.start.x) +
                          dx * static_cast<double>(y - e.start.y) / static_cast<double>(dy));
      }
    }
    const double x0 = static_cast<double>(polygon.min_x());
    const double x1 = static_cast<double>(polygon.max_x());
    for (double k : integers_between(x0, x1)) xbreaks.push_back(k);

    auto y_bounds = [&](double x) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& e : edges) {
        const double ax = static_cast<double>(e.start.x), bx = static_cast<double>(e.end.x);
        if (ax == bx) continue;
        const double l = std::min(ax, bx), r = std::max(ax, bx);
        if (x < l || x > r) continue;
        const double y = static_cast<double>(e.start.y) +
                         static_cast<double>(e.end.y - e.start.y) * (x - ax) / (bx - ax);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
      return std::make_pair(lo, hi);
    };

    const double width = x1 - x0;
    QuadOptions outer;
    outer.abs_tol = 0.25 * tol;
    outer.breakpoints = xbreaks;
    outer.frequency_hint = f.frequency_hint;
    QuadOptions inner;
    inner.abs_tol = 0.1 * tol / (width + 1.0);
    inner.frequency_hint = f.frequency_hint;
    double inner_err = 0.0;

    auto column = [&](double x) -> CVec<4> {
      const auto [lo, hi] = y_bounds(x);
      CVec<4> zero;
      if (!(hi > lo)) return zero;
      QuadOptions o = inner;
      o.breakpoints = integers_between(lo, hi);
      const double px = psi1(x);
      auto g = [&](double y) {
        const double py = psi1(y);
        CVec<4> v;
        v[0] = f.value(x, y);
        v[1] = f.dx(x, y) * px;
        v[2] = f.dy(x, y) * py;
        v[3] = f.dxy(x, y) * (px * py);
        return v;
      };
      auto r = integrate_1d(g, lo, hi, o);
      inner_err = std::max(inner_err, r.error_estimate);
      return r.value;
    };
    auto res = integrate_1d(column, x0, x1, outer);
    for (int i = 0; i < 4; ++i) rep.area_terms[i] = res.value[i];
    qerr += res.error_estimate + inner_err * (width + 1.0);
  }

  // Edge terms.
  SlopeCache slopes;
  CompensatedSum<cplx> e_x, e_y, e_d;
  for (const auto& e : edges) {
    const double n1 = static_cast<double>(e.outward_normal.x);
    const double n2 = static_cast<double>(e.outward_normal.y);
    const double sx = static_cast<double>(e.start.x), sy = static_cast<double>(e.start.y);
    const double mx = static_cast<double>(e.primitive.x), my = static_cast<double>(e.primitive.y);
    QuadOptions opts;
    opts.abs_tol = 0.1 * tol / static_cast<double>(edges.size());
    opts.breakpoints = edge_integer_crossings(e);
    opts.frequency_hint = f.frequency_hint * std::hypot(mx, my);
    auto g = [&](double u) {
      const double x = sx + u * mx, y = sy + u * my;
      const double px = psi1(x), py = psi1(y);
      const cplx v = f.value(x, y);
      CVec<4> out;
      out[0] = v * px;
      out[1] = v * py;
      out[2] = f.dx(x, y) * (px * py);
      out[3] = f.dy(x, y) * (px * py);
      return out;
    };
    auto r = integrate_1d(g, 0.0, static_cast<double>(e.lambda), opts);
    qerr += r.error_estimate * (std::abs(n1) + std::abs(n2) + 1.0);
    const auto& I = r.value;
    if (n1 != 0.0) e_x.add(-n1 * I[0]);
    if (n2 != 0.0) e_y.add(-n2 * I[1]);
    // f D Psi = f (n2 psi(y) + n1 psi(x)) - n2 f delta(x) psi(y) - n1 f psi(x) delta(y)
    cplx fdpsi = n2 * I[1] + n1 * I[0];
    if (e.primitive.x != 0) fdpsi -= n2 * delta_term(e, f.value, true, slopes);
    if (e.primitive.y != 0) fdpsi -= n1 * delta_term(e, f.value, false, slopes);
    const cplx psidf = n2 * I[2] + n1 * I[3];
    e_d.add(0.5 * (fdpsi - psidf));
  }
  rep.edge_terms = {e_x.value(), e_y.value(), e_d.value()};

  CompensatedSum<cplx> total;
  for (const auto& a : rep.area_terms) total.add(a);
  for (const auto& a : rep.edge_terms) total.add(a);
  rep.T_value = total.value();

  // Lattice sums.
  const auto pts = lattice_points_in(polygon);
  CompensatedSum<cplx> plain, weighted;
  double babs = 0.0;
  for (const auto& p : pts.interior) {
    const cplx v = f.value(static_cast<double>(p.x), static_cast<double>(p.y));
    plain.add(v);
    weighted.add(v);
  }
  for (const auto& p : pts.edge_interior) {
    const cplx v = f.value(static_cast<double>(p.x), static_cast<double>(p.y));
    plain.add(v);
    weighted.add(0.5 * v);
    babs += std::abs(v);
  }
  for (const auto& p : pts.vertices) {
    const cplx v = f.value(static_cast<double>(p.x), static_cast<double>(p.y));
    plain.add(v);
    weighted.add(vertex_weight(polygon, p) * v);
    babs += std::abs(v);
  }
  rep.lattice_sum = plain.value();
  rep.weighted_sum = weighted.value();
  rep.boundary_abs_sum = babs;
  rep.quadrature_error = qerr;
  return rep;
}

}  // namespace circle
