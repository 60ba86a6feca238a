#pragma once

#include <vector>

#include "ritzlag/basis.hpp"
#include "ritzlag/quadrature.hpp"

namespace ritzlag {

/// Which boundary data of the trial function a weight is paired against.
enum class TraceKind { value, normal_derivative };

/// Trace of a 2D basis member at a boundary sample: the member's value, or
/// its outward normal derivative, at the sample's boundary point.
double trace_eval(TraceKind kind, const Basis2D& basis, std::size_t member,
                  const BoundarySample& sample, BoundaryKind boundary);

/// Exact point evaluation of a function (order 0) or its first derivative
/// (order 1) at an interval endpoint.
struct EndpointFunctional {
  double location = 0.0;       // 0 or the interval length
  int derivative_order = 0;    // 0 or 1
};

/// Family of boundary weight functionals psi_j.
///
/// circle_partition(s): 2s members, the indicators g_k of the s arcs followed
/// by the linear pieces h_k (global angle theta on arc k, zero elsewhere).
/// square_edge_cosines(s): 4s members, edge-major (bottom, right, top, left),
/// cos((j-1) pi z) for j = 1..s within each edge.
/// endpoints: point-evaluation functionals on [0, l].
class WeightSet {
 public:
  enum class Kind { circle_partition, square_edge_cosines, endpoint };

  static WeightSet circle(int s);
  static WeightSet square_edge_cosines(int s);
  static WeightSet endpoints(std::vector<EndpointFunctional> which);

  Kind kind() const { return kind_; }
  int segments() const { return segments_; }
  std::size_t size() const;

  /// psi_j evaluated at a boundary sample (circle/square kinds only).
  double value(std::size_t j, const BoundarySample& sample) const;

  /// Pair psi_j against a sampled boundary function via the given quadrature.
  double pair(std::size_t j, const BoundaryQuadrature& bq,
              const std::function<double(const BoundarySample&)>& f) const;

  const std::vector<EndpointFunctional>& endpoint_functionals() const { return endpoints_; }

  /// Apply endpoint functional j to a 1D basis member (endpoint kind only).
  double apply_endpoint(std::size_t j, const Basis1D& basis, std::size_t member) const;

 private:
  explicit WeightSet(Kind kind) : kind_(kind) {}

  Kind kind_;
  int segments_ = 0;
  std::vector<EndpointFunctional> endpoints_;
};

/// Factory over the boundary-weight families by domain tag.
WeightSet boundary_weights(WeightSet::Kind kind, int s);

/// Factory over endpoint point-evaluation functionals.
WeightSet endpoint_weights(std::vector<EndpointFunctional> which);

}  // namespace ritzlag
