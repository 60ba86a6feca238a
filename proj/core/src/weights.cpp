#include "ritzlag/weights.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ritzlag {

double trace_eval(TraceKind kind, const Basis2D& basis, std::size_t member,
                  const BoundarySample& sample, BoundaryKind boundary) {
  const Eval2D e = basis.eval(member, sample.x, sample.y);
  if (kind == TraceKind::value) return e.value;
  // Outward normal derivative.
  if (boundary == BoundaryKind::unit_circle) return e.dx * sample.x + e.dy * sample.y;
  switch (sample.segment) {
    case 0: return -e.dy;  // bottom
    case 1: return e.dx;   // right
    case 2: return e.dy;   // top
    case 3: return -e.dx;  // left
  }
  throw std::invalid_argument("trace_eval: unknown square edge index");
}

WeightSet WeightSet::circle(int s) {
  if (s < 1) throw std::invalid_argument("circle weights: s must be >= 1");
  WeightSet w(Kind::circle_partition);
  w.segments_ = s;
  return w;
}

WeightSet WeightSet::square_edge_cosines(int s) {
  if (s < 1) throw std::invalid_argument("square edge weights: s must be >= 1");
  WeightSet w(Kind::square_edge_cosines);
  w.segments_ = s;
  return w;
}

WeightSet WeightSet::endpoints(std::vector<EndpointFunctional> which) {
  if (which.empty()) throw std::invalid_argument("endpoint weights: empty functional list");
  for (const EndpointFunctional& e : which)
    if (e.derivative_order != 0 && e.derivative_order != 1)
      throw std::invalid_argument("endpoint weights: derivative order must be 0 or 1");
  WeightSet w(Kind::endpoint);
  w.endpoints_ = std::move(which);
  return w;
}

std::size_t WeightSet::size() const {
  switch (kind_) {
    case Kind::circle_partition: return 2 * static_cast<std::size_t>(segments_);
    case Kind::square_edge_cosines: return 4 * static_cast<std::size_t>(segments_);
    case Kind::endpoint: return endpoints_.size();
  }
  return 0;
}

double WeightSet::value(std::size_t j, const BoundarySample& sample) const {
  if (j >= size()) throw std::out_of_range("weight index out of range");
  const auto s = static_cast<std::size_t>(segments_);
  switch (kind_) {
    case Kind::circle_partition: {
      // g_0..g_{s-1} then h_0..h_{s-1}; h_k carries the global angle.
      const std::size_t k = j < s ? j : j - s;
      if (static_cast<std::size_t>(sample.segment) != k) return 0.0;
      return j < s ? 1.0 : sample.param;
    }
    case Kind::square_edge_cosines: {
      const std::size_t edge = j / s;
      const std::size_t mode = j % s;
      if (static_cast<std::size_t>(sample.segment) != edge) return 0.0;
      return std::cos(static_cast<double>(mode) * std::numbers::pi * sample.param);
    }
    case Kind::endpoint:
      throw std::invalid_argument("endpoint weights have no boundary-sample evaluation");
  }
  return 0.0;
}

double WeightSet::pair(std::size_t j, const BoundaryQuadrature& bq,
                       const std::function<double(const BoundarySample&)>& f) const {
  double sum = 0.0;
  for (const BoundarySample& s : bq.samples) {
    const double w = value(j, s);
    if (w != 0.0) sum += s.weight * w * f(s);
  }
  return sum;
}

double WeightSet::apply_endpoint(std::size_t j, const Basis1D& basis, std::size_t member) const {
  if (kind_ != Kind::endpoint)
    throw std::invalid_argument("apply_endpoint requires endpoint weights");
  const EndpointFunctional& e = endpoints_.at(j);
  const Eval1D v = basis.eval(member, e.location);
  return e.derivative_order == 0 ? v.value : v.d1;
}

WeightSet boundary_weights(WeightSet::Kind kind, int s) {
  switch (kind) {
    case WeightSet::Kind::circle_partition: return WeightSet::circle(s);
    case WeightSet::Kind::square_edge_cosines: return WeightSet::square_edge_cosines(s);
    case WeightSet::Kind::endpoint: break;
  }
  throw std::invalid_argument("boundary_weights expects a circle or square domain tag");
}

WeightSet endpoint_weights(std::vector<EndpointFunctional> which) {
  return WeightSet::endpoints(std::move(which));
}

}  // namespace ritzlag
