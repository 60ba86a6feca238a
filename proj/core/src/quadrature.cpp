#include "ritzlag/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ritzlag {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_1d(const QuadratureRule1D& rule) {
  if (rule.nodes.size() != rule.weights.size())
    throw std::invalid_argument("quadrature: node/weight count mismatch");
  if (rule.a >= rule.b) throw std::invalid_argument("quadrature: interval must have a < b");
  const double span = rule.b - rule.a;
  const double slack = 1e-12 * span;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.weights[i] <= 0.0) throw std::invalid_argument("quadrature: weights must be positive");
    if (rule.nodes[i] < rule.a - slack || rule.nodes[i] > rule.b + slack)
      throw std::invalid_argument("quadrature: node outside [a, b]");
    sum += rule.weights[i];
  }
  if (std::abs(sum - span) > 1e-13 * span)
    throw std::invalid_argument("quadrature: weight sum " + std::to_string(sum) +
                                " does not match interval length " + std::to_string(span));
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre_reference(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
}

}  // namespace

QuadratureRule1D::QuadratureRule1D(std::vector<double> nodes_in, std::vector<double> weights_in,
                                   double a_in, double b_in)
    : nodes(std::move(nodes_in)), weights(std::move(weights_in)), a(a_in), b(b_in) {
  validate_1d(*this);
}

double QuadratureRule1D::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule1D gauss_legendre(int order, double a, double b) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  if (a >= b) throw std::invalid_argument("gauss_legendre: need a < b");
  std::vector<double> xr, wr;
  gauss_legendre_reference(order, xr, wr);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    nodes[i] = mid + half * xr[i];
    weights[i] = half * wr[i];
  }
  return {std::move(nodes), std::move(weights), a, b};
}

QuadratureRule1D composite_gauss(int order, int panels, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be >= 1");
  const QuadratureRule1D base = gauss_legendre(order, 0.0, 1.0);
  const double h = (b - a) / panels;
  std::vector<double> nodes, weights;
  nodes.reserve(static_cast<std::size_t>(order) * panels);
  weights.reserve(static_cast<std::size_t>(order) * panels);
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * h;
    for (int i = 0; i < order; ++i) {
      nodes.push_back(left + h * base.nodes[i]);
      weights.push_back(h * base.weights[i]);
    }
  }
  return {std::move(nodes), std::move(weights), a, b};
}

QuadratureRule2D::QuadratureRule2D(std::vector<double> x_in, std::vector<double> y_in,
                                   std::vector<double> weights_in, Domain2D domain_in)
    : x(std::move(x_in)), y(std::move(y_in)), weights(std::move(weights_in)), domain(domain_in) {
  if (x.size() != y.size() || x.size() != weights.size())
    throw std::invalid_argument("quadrature2d: point/weight count mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw std::invalid_argument("quadrature2d: weights must be positive");
    sum += w;
  }
  const double area = domain == Domain2D::unit_square ? 1.0 : kPi;
  if (std::abs(sum - area) > 1e-12 * area)
    throw std::invalid_argument("quadrature2d: weight sum does not match domain area");
}

double QuadratureRule2D::integrate(const std::function<double(double, double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += weights[i] * f(x[i], y[i]);
  return sum;
}

QuadratureRule2D tensor_square(const QuadratureRule1D& rule_x, const QuadratureRule1D& rule_y) {
  const auto on_unit = [](const QuadratureRule1D& r) {
    return std::abs(r.a) < 1e-14 && std::abs(r.b - 1.0) < 1e-14;
  };
  if (!on_unit(rule_x) || !on_unit(rule_y))
    throw std::invalid_argument("tensor_square: factor rules must live on [0, 1]");
  std::vector<double> xs, ys, ws;
  const std::size_t n = rule_x.size() * rule_y.size();
  xs.reserve(n);
  ys.reserve(n);
  ws.reserve(n);
  for (std::size_t i = 0; i < rule_x.size(); ++i) {
    for (std::size_t j = 0; j < rule_y.size(); ++j) {
      xs.push_back(rule_x.nodes[i]);
      ys.push_back(rule_y.nodes[j]);
      ws.push_back(rule_x.weights[i] * rule_y.weights[j]);
    }
  }
  return {std::move(xs), std::move(ys), std::move(ws), Domain2D::unit_square};
}

QuadratureRule2D polar_disk(int radial_order, int angular_count) {
  if (radial_order < 1) throw std::invalid_argument("polar_disk: radial_order must be >= 1");
  if (angular_count < 4) throw std::invalid_argument("polar_disk: angular_count must be >= 4");
  const QuadratureRule1D radial = gauss_legendre(radial_order, 0.0, 1.0);
  const double dtheta = 2.0 * kPi / angular_count;
  std::vector<double> xs, ys, ws;
  const std::size_t n = radial.size() * static_cast<std::size_t>(angular_count);
  xs.reserve(n);
  ys.reserve(n);
  ws.reserve(n);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes[i];
    const double wr = radial.weights[i] * r * dtheta;  // Jacobian r
    for (int k = 0; k < angular_count; ++k) {
      const double theta = dtheta * k;
      xs.push_back(r * std::cos(theta));
      ys.push_back(r * std::sin(theta));
      ws.push_back(wr);
    }
  }
  return {std::move(xs), std::move(ys), std::move(ws), Domain2D::unit_disk};
}

double BoundaryQuadrature::total_weight() const {
  double sum = 0.0;
  for (const BoundarySample& s : samples) sum += s.weight;
  return sum;
}

double BoundaryQuadrature::integrate(const std::function<double(const BoundarySample&)>& f) const {
  double sum = 0.0;
  for (const BoundarySample& s : samples) sum += s.weight * f(s);
  return sum;
}

BoundaryQuadrature circle_partition(int s, int per_segment_order) {
  if (s < 1) throw std::invalid_argument("circle_partition: s must be >= 1");
  BoundaryQuadrature bq;
  bq.kind = BoundaryKind::unit_circle;
  bq.segments = s;
  const double arc = 2.0 * kPi / s;
  for (int k = 0; k < s; ++k) {
    const QuadratureRule1D rule = gauss_legendre(per_segment_order, arc * k, arc * (k + 1));
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double theta = rule.nodes[i];
      bq.samples.push_back({theta, std::cos(theta), std::sin(theta), rule.weights[i], k});
    }
  }
  return bq;
}

BoundaryQuadrature square_edges(int per_edge_order, int panels_per_edge) {
  BoundaryQuadrature bq;
  bq.kind = BoundaryKind::unit_square_edges;
  bq.segments = 4;
  const QuadratureRule1D rule = composite_gauss(per_edge_order, panels_per_edge, 0.0, 1.0);
  for (int edge = 0; edge < 4; ++edge) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double z = rule.nodes[i];
      double px = 0.0, py = 0.0;
      switch (edge) {
        case 0: px = z; py = 0.0; break;  // bottom (x, 0)
        case 1: px = 1.0; py = z; break;  // right  (1, y)
        case 2: px = z; py = 1.0; break;  // top    (x, 1)
        case 3: px = 0.0; py = z; break;  // left   (0, y)
      }
      bq.samples.push_back({z, px, py, rule.weights[i], edge});
    }
  }
  return bq;
}

}  // namespace ritzlag
