#pragma once

#include <functional>
#include <vector>

namespace ritzlag {

/// Fixed 1D quadrature rule on a closed interval [a, b].
///
/// Invariants checked on construction: matching node/weight counts, strictly
/// positive weights, nodes inside [a, b], and weight sum equal to b - a.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 1.0;

  QuadratureRule1D(std::vector<double> nodes, std::vector<double> weights, double a, double b);

  std::size_t size() const { return nodes.size(); }

  double integrate(const std::function<double(double)>& f) const;
};

/// Gauss-Legendre rule of the given order mapped to [a, b]; exact for
/// polynomials of degree <= 2*order - 1.
QuadratureRule1D gauss_legendre(int order, double a, double b);

/// The base Gauss rule of order `order` mapped to each of `panels` equal
/// subintervals of [a, b].
QuadratureRule1D composite_gauss(int order, int panels, double a, double b);

enum class Domain2D { unit_square, unit_disk };

/// Fixed 2D rule over the unit square or the unit disk. Weight sum equals
/// the domain area (1 or pi).
struct QuadratureRule2D {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> weights;
  Domain2D domain = Domain2D::unit_square;

  QuadratureRule2D(std::vector<double> x, std::vector<double> y, std::vector<double> weights,
                   Domain2D domain);

  std::size_t size() const { return x.size(); }

  double integrate(const std::function<double(double, double)>& f) const;
};

/// Product of two 1D rules on [0,1]; exactness degree is the minimum of the
/// factors'.
QuadratureRule2D tensor_square(const QuadratureRule1D& rule_x, const QuadratureRule1D& rule_y);

/// Polar rule on the unit disk: Gauss nodes in r on [0,1], uniform angles,
/// weights carrying the Jacobian r. Exact for total degree
/// <= min(2*radial_order - 2, angular_count - 1).
QuadratureRule2D polar_disk(int radial_order, int angular_count);

enum class BoundaryKind { unit_circle, unit_square_edges };

/// One boundary quadrature sample: parameter (theta on the circle, z on a
/// square edge), the boundary point it maps to, an arc-length weight, and
/// the index of the segment (arc k, or edge 0..3) it belongs to.
struct BoundarySample {
  double param;
  double x;
  double y;
  double weight;
  int segment;
};

/// Arc-length quadrature over a partitioned boundary curve. Total weight is
/// the boundary length: 2*pi for the unit circle, 4 for the unit square.
struct BoundaryQuadrature {
  BoundaryKind kind = BoundaryKind::unit_circle;
  int segments = 1;  // partition count: s arcs, or 4 edges
  std::vector<BoundarySample> samples;

  double total_weight() const;

  double integrate(const std::function<double(const BoundarySample&)>& f) const;
};

/// Uniform partition of the unit circle into s arcs, each carrying a Gauss
/// rule in theta with arc-length weight d(theta).
BoundaryQuadrature circle_partition(int s, int per_segment_order);

/// The four unit-square edges, each parametrized by z in [0,1] in the order
/// bottom (x,0), right (1,y), top (x,1), left (0,y), each carrying a
/// composite Gauss rule in z.
BoundaryQuadrature square_edges(int per_edge_order, int panels_per_edge = 1);

}  // namespace ritzlag
