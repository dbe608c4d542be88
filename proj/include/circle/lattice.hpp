#pragma once

// Exact integer lattice geometry: integer square roots, convex hulls,
// the refined polygon Delta_{t,Q}, edge data and lattice-point weights.
// Every predicate uses integer arithmetic with 128-bit cross products.

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "circle/numerics.hpp"
#include "circle/quadrature.hpp"

namespace circle {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

struct Edge {
  LatticePoint start;
  LatticePoint end;
  std::int64_t lambda = 0;
  LatticePoint primitive;       // (end - start) / lambda
  LatticePoint outward_normal;  // (primitive.y, -primitive.x) for a CCW polygon
};

/// Strictly convex, counter-clockwise lattice polygon.
class LatticePolygon {
 public:
  /// Validates the vertex list; throws std::domain_error when it is not a
  /// strictly convex CCW polygon with positive area.
  explicit LatticePolygon(std::vector<LatticePoint> vertices);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Twice the signed area (an integer).
  std::int64_t twice_area() const { return twice_area_; }
  std::int64_t min_y() const { return min_y_; }
  std::int64_t max_y() const { return max_y_; }
  std::int64_t min_x() const { return min_x_; }
  std::int64_t max_x() const { return max_x_; }

  /// Integer x range [lo, hi] of lattice points on row y (empty when lo > hi).
  std::pair<std::int64_t, std::int64_t> row_range(std::int64_t y) const;

  /// 0 outside, 1 interior, 2 relative interior of an edge, 3 vertex.
  int classify(LatticePoint p) const;

 private:
  std::vector<LatticePoint> vertices_;
  std::vector<Edge> edges_;
  std::int64_t twice_area_ = 0;
  std::int64_t min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
};

/// floor(sqrt(n)) for 0 <= n < 2^63.
std::int64_t isqrt(std::int64_t n);

/// Exact convex hull, CCW, collinear points dropped.
std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> points);

/// Hull of all (m, n) with m^2 + n^2 <= Q^2 t.
LatticePolygon build_refined_polygon(std::int64_t t, std::int64_t Q);

/// Edge list of a polygon (the same data LatticePolygon::edges holds).
std::vector<Edge> edge_data(const LatticePolygon& polygon);

struct LatticePartition {
  std::vector<LatticePoint> interior;
  std::vector<LatticePoint> edge_interior;
  std::vector<LatticePoint> vertices;
  std::size_t total() const { return interior.size() + edge_interior.size() + vertices.size(); }
};

LatticePartition lattice_points_in(const LatticePolygon& polygon);

/// Interior angle at v over 2 pi. Throws if v is not a vertex.
double vertex_weight(const LatticePolygon& polygon, LatticePoint v);

/// The weighting w: 1 inside, 1/2 on edges, the vertex weight at
/// vertices, 0 outside.
double point_weight(const LatticePolygon& polygon, LatticePoint p);

/// Integral of g over the closed edge in the normalized measure (total
/// mass lambda). Panels are split where either coordinate is an integer.
/// frequency_hint is in cycles per unit Euclidean length.
QuadratureResult<cplx> edge_integral(const Edge& edge,
                                     const std::function<cplx(double, double)>& g, double tol,
                                     double frequency_hint = 0.0);

/// Parameter values u in (0, lambda) where x or y along the edge is an
/// integer, sorted. Used for panel splitting.
std::vector<double> edge_integer_crossings(const Edge& edge);

}  // namespace circle
