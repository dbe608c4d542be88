#include "circle/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace circle {

namespace {

__extension__ typedef __int128 i128;

i128 cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return static_cast<i128>(a.x - o.x) * (b.y - o.y) - static_cast<i128>(a.y - o.y) * (b.x - o.x);
}

std::int64_t floor_div(i128 a, i128 b) {
  // b != 0
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

}  // namespace

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt: n must be >= 0");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  // Fix up the floating estimate in exact arithmetic.
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

LatticePolygon::LatticePolygon(std::vector<LatticePoint> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::domain_error("LatticePolygon: need at least 3 vertices");
  i128 area2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    const auto& c = vertices_[(i + 2) % n];
    if (cross(a, b, c) <= 0) {
      throw std::domain_error("LatticePolygon: vertices must be strictly convex and CCW");
    }
    area2 += static_cast<i128>(a.x) * b.y - static_cast<i128>(b.x) * a.y;
  }
  if (area2 <= 0) throw std::domain_error("LatticePolygon: degenerate or clockwise polygon");
  // Left turns everywhere can still wind more than once.
  if (convex_hull(vertices_).size() != n) {
    throw std::domain_error("LatticePolygon: vertex list is not a convex hull");
  }
  twice_area_ = static_cast<std::int64_t>(area2);
  min_x_ = max_x_ = vertices_[0].x;
  min_y_ = max_y_ = vertices_[0].y;
  for (const auto& v : vertices_) {
    min_x_ = std::min(min_x_, v.x);
    max_x_ = std::max(max_x_, v.x);
    min_y_ = std::min(min_y_, v.y);
    max_y_ = std::max(max_y_, v.y);
  }
  edges_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Edge e;
    e.start = vertices_[i];
    e.end = vertices_[(i + 1) % n];
    const std::int64_t dx = e.end.x - e.start.x;
    const std::int64_t dy = e.end.y - e.start.y;
    e.lambda = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    e.primitive = {dx / e.lambda, dy / e.lambda};
    e.outward_normal = {e.primitive.y, -e.primitive.x};
    edges_.push_back(e);
  }
}

std::pair<std::int64_t, std::int64_t> LatticePolygon::row_range(std::int64_t y) const {
  if (y < min_y_ || y > max_y_) return {1, 0};
  std::int64_t lo = min_x_, hi = max_x_;
  for (const auto& e : edges_) {
    // Inside means cross(start, end, p) >= 0, i.e. dx (y - sy) - dy (x - sx) >= 0.
    const i128 dx = e.end.x - e.start.x;
    const i128 dy = e.end.y - e.start.y;
    const i128 rhs = dx * (y - e.start.y) + dy * e.start.x;  // need dy * x <= rhs
    if (dy > 0) {
      hi = std::min(hi, floor_div(rhs, dy));
    } else if (dy < 0) {
      lo = std::max(lo, ceil_div(rhs, dy));
    } else if (dx * (y - e.start.y) < 0) {
      return {1, 0};
    }
  }
  return {lo, hi};
}

int LatticePolygon::classify(LatticePoint p) const {
  int zeros = 0;
  for (const auto& e : edges_) {
    const i128 c = cross(e.start, e.end, p);
    if (c < 0) return 0;
    if (c == 0) ++zeros;
  }
  if (zeros == 0) return 1;
  return zeros == 1 ? 2 : 3;
}

LatticePolygon build_refined_polygon(std::int64_t t, std::int64_t Q) {
  if (t <= 0) throw std::domain_error("build_refined_polygon: t must be positive");
  if (Q < 1 || Q % 2 == 0) throw std::domain_error("build_refined_polygon: Q must be odd and >= 1");
  const i128 lim128 = static_cast<i128>(Q) * Q * t;
  if (lim128 > (static_cast<i128>(1) << 62)) {
    throw std::domain_error("build_refined_polygon: Q^2 t too large");
  }
  const auto lim = static_cast<std::int64_t>(lim128);
  const std::int64_t k = isqrt(lim);
  std::vector<LatticePoint> extremes;
  extremes.reserve(static_cast<std::size_t>(4 * k + 2));
  for (std::int64_t n = -k; n <= k; ++n) {
    const std::int64_t m = isqrt(lim - n * n);
    extremes.push_back({-m, n});
    extremes.push_back({m, n});
  }
  return LatticePolygon(convex_hull(std::move(extremes)));
}

std::vector<Edge> edge_data(const LatticePolygon& polygon) { return polygon.edges(); }

LatticePartition lattice_points_in(const LatticePolygon& polygon) {
  LatticePartition out;
  for (std::int64_t y = polygon.min_y(); y <= polygon.max_y(); ++y) {
    const auto [lo, hi] = polygon.row_range(y);
    for (std::int64_t x = lo; x <= hi; ++x) {
      // Only row ends and the top and bottom rows can touch the boundary.
      int c = 1;
      if (x == lo || x == hi || y == polygon.min_y() || y == polygon.max_y()) {
        c = polygon.classify({x, y});
      }
      if (c == 1) out.interior.push_back({x, y});
      else if (c == 2) out.edge_interior.push_back({x, y});
      else if (c == 3) out.vertices.push_back({x, y});
    }
  }
  return out;
}

double vertex_weight(const LatticePolygon& polygon, LatticePoint v) {
  const auto& vs = polygon.vertices();
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vs[i] != v) continue;
    const auto& prev = vs[(i + n - 1) % n];
    const auto& next = vs[(i + 1) % n];
    const double ax = static_cast<double>(next.x - v.x), ay = static_cast<double>(next.y - v.y);
    const double bx = static_cast<double>(prev.x - v.x), by = static_cast<double>(prev.y - v.y);
    // Angle from the outgoing edge to the incoming edge, counter-clockwise.
    const double angle = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    return angle / kTwoPi;
  }
  throw std::domain_error("vertex_weight: point is not a vertex");
}

double point_weight(const LatticePolygon& polygon, LatticePoint p) {
  switch (polygon.classify(p)) {
    case 1: return 1.0;
    case 2: return 0.5;
    case 3: return vertex_weight(polygon, p);
    default: return 0.0;
  }
}

std::vector<double> edge_integer_crossings(const Edge& edge) {
  std::vector<double> u;
  for (std::int64_t c : {edge.primitive.x, edge.primitive.y}) {
    const std::int64_t a = c < 0 ? -c : c;
    if (a <= 1) continue;  // crossings coincide with lattice points
    for (std::int64_t k = 1; k < edge.lambda * a; ++k) {
      u.push_back(static_cast<double>(k) / static_cast<double>(a));
    }
  }
  for (std::int64_t k = 1; k < edge.lambda; ++k) u.push_back(static_cast<double>(k));
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

QuadratureResult<cplx> edge_integral(const Edge& edge,
                                     const std::function<cplx(double, double)>& g, double tol,
                                     double frequency_hint) {
  if (!(tol > 0.0)) throw std::domain_error("edge_integral: tol must be > 0");
  const double sx = static_cast<double>(edge.start.x), sy = static_cast<double>(edge.start.y);
  const double mx = static_cast<double>(edge.primitive.x);
  const double my = static_cast<double>(edge.primitive.y);
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.breakpoints = edge_integer_crossings(edge);
  opts.frequency_hint = frequency_hint * std::hypot(mx, my);
  // Evaluate at exact endpoints when u hits the integer grid of the parameter.
  auto h = [&](double u) { return g(sx + u * mx, sy + u * my); };
  return integrate_1d(h, 0.0, static_cast<double>(edge.lambda), opts);
}

}  // namespace circle
