#include "ritzlag/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "ritzlag/errors.hpp"

namespace ritzlag {

namespace {

void check_interval_match(const Basis1D& basis, const QuadratureRule1D& quad) {
  if (std::abs(quad.a) > 1e-12 || std::abs(quad.b - basis.length()) > 1e-12 * basis.length())
    throw std::invalid_argument("assembly: quadrature interval does not match basis interval");
}

enum class Channel { value, dx, dy, dxx, dyy, dxy };

// Per-channel evaluation tables: E(q, i) = channel of member i at point q.
Eigen::MatrixXd eval_table(const Basis2D& basis, const QuadratureRule2D& quad, Channel c) {
  const auto np = static_cast<Eigen::Index>(quad.size());
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd table(np, nm);
  for (Eigen::Index q = 0; q < np; ++q) {
    for (Eigen::Index i = 0; i < nm; ++i) {
      const Eval2D e = basis.eval(static_cast<std::size_t>(i), quad.x[q], quad.y[q]);
      double v = 0.0;
      switch (c) {
        case Channel::value: v = e.value; break;
        case Channel::dx: v = e.dx; break;
        case Channel::dy: v = e.dy; break;
        case Channel::dxx: v = e.dxx; break;
        case Channel::dyy: v = e.dyy; break;
        case Channel::dxy: v = e.dxy; break;
      }
      table(q, i) = v;
    }
  }
  return table;
}

Eigen::MatrixXd weighted_product(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& w,
                                 const Eigen::MatrixXd& rhs) {
  return lhs.transpose() * w.asDiagonal() * rhs;
}

Eigen::VectorXd weight_vector(const std::vector<double>& w) {
  return Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

Eigen::MatrixXd symmetrized(Eigen::MatrixXd m) { return 0.5 * (m + m.transpose()).eval(); }

}  // namespace

EnergyForm EnergyForm::dirichlet_gradient(double load_sign) {
  return {Kind::dirichlet_gradient, 0.0, load_sign};
}

EnergyForm EnergyForm::second_derivative_1d(double load_sign) {
  return {Kind::second_derivative_1d, 0.0, load_sign};
}

EnergyForm EnergyForm::kirchhoff_plate(double nu, double load_sign) {
  if (nu < 0.0 || nu >= 1.0) throw std::invalid_argument("kirchhoff_plate: need 0 <= nu < 1");
  return {Kind::kirchhoff_plate, nu, load_sign};
}

Eigen::MatrixXd assemble_stiffness(const EnergyForm& form, const Basis1D& basis,
                                   const QuadratureRule1D& quad) {
  if (form.kind == EnergyForm::Kind::kirchhoff_plate)
    throw std::invalid_argument("assemble_stiffness: plate form needs a 2D basis");
  check_interval_match(basis, quad);
  const auto np = static_cast<Eigen::Index>(quad.size());
  const auto nm = static_cast<Eigen::Index>(basis.size());
  const bool second = form.kind == EnergyForm::Kind::second_derivative_1d;
  Eigen::MatrixXd d(np, nm);
  for (Eigen::Index q = 0; q < np; ++q)
    for (Eigen::Index i = 0; i < nm; ++i) {
      const Eval1D e = basis.eval(static_cast<std::size_t>(i), quad.nodes[q]);
      d(q, i) = second ? e.d2 : e.d1;
    }
  return symmetrized(weighted_product(d, weight_vector(quad.weights), d));
}

Eigen::MatrixXd assemble_stiffness(const EnergyForm& form, const Basis2D& basis,
                                   const QuadratureRule2D& quad) {
  if (form.kind == EnergyForm::Kind::second_derivative_1d)
    throw std::invalid_argument("assemble_stiffness: 1D bending form needs a 1D basis");
  const Eigen::VectorXd w = weight_vector(quad.weights);
  if (form.kind == EnergyForm::Kind::dirichlet_gradient) {
    const Eigen::MatrixXd dx = eval_table(basis, quad, Channel::dx);
    const Eigen::MatrixXd dy = eval_table(basis, quad, Channel::dy);
    return symmetrized(weighted_product(dx, w, dx) + weighted_product(dy, w, dy));
  }
  const Eigen::MatrixXd dxx = eval_table(basis, quad, Channel::dxx);
  const Eigen::MatrixXd dyy = eval_table(basis, quad, Channel::dyy);
  const Eigen::MatrixXd dxy = eval_table(basis, quad, Channel::dxy);
  Eigen::MatrixXd k = weighted_product(dxx, w, dxx) + weighted_product(dyy, w, dyy) +
                      form.nu * (weighted_product(dxx, w, dyy) + weighted_product(dyy, w, dxx)) +
                      2.0 * (1.0 - form.nu) * weighted_product(dxy, w, dxy);
  return symmetrized(std::move(k));
}

Eigen::VectorXd assemble_load(const EnergyForm& form, const std::function<double(double)>& f,
                              const Basis1D& basis, const QuadratureRule1D& quad) {
  check_interval_match(basis, quad);
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd load = Eigen::VectorXd::Zero(nm);
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const double wf = quad.weights[q] * f(quad.nodes[q]);
    for (Eigen::Index i = 0; i < nm; ++i)
      load(i) += wf * basis.value(static_cast<std::size_t>(i), quad.nodes[q]);
  }
  return form.load_sign * load;
}

Eigen::VectorXd assemble_load(const EnergyForm& form,
                              const std::function<double(double, double)>& f, const Basis2D& basis,
                              const QuadratureRule2D& quad) {
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd load = Eigen::VectorXd::Zero(nm);
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const double wf = quad.weights[q] * f(quad.x[q], quad.y[q]);
    for (Eigen::Index i = 0; i < nm; ++i)
      load(i) += wf * basis.value(static_cast<std::size_t>(i), quad.x[q], quad.y[q]);
  }
  return form.load_sign * load;
}

Eigen::MatrixXd assemble_constraints(const WeightSet& weights, const Basis1D& basis) {
  if (weights.kind() != WeightSet::Kind::endpoint)
    throw std::invalid_argument("assemble_constraints: 1D basis pairs with endpoint weights");
  const auto s = static_cast<Eigen::Index>(weights.size());
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd l(s, nm);
  for (Eigen::Index j = 0; j < s; ++j)
    for (Eigen::Index i = 0; i < nm; ++i)
      l(j, i) = weights.apply_endpoint(static_cast<std::size_t>(j), basis,
                                       static_cast<std::size_t>(i));
  return l;
}

Eigen::MatrixXd assemble_constraints(TraceKind trace, const WeightSet& weights,
                                     const Basis2D& basis, const BoundaryQuadrature& bquad) {
  if (weights.kind() == WeightSet::Kind::endpoint)
    throw std::invalid_argument("assemble_constraints: endpoint weights pair with a 1D basis");
  const bool circle_ok = weights.kind() == WeightSet::Kind::circle_partition &&
                         bquad.kind == BoundaryKind::unit_circle &&
                         bquad.segments == weights.segments();
  const bool square_ok = weights.kind() == WeightSet::Kind::square_edge_cosines &&
                         bquad.kind == BoundaryKind::unit_square_edges;
  if (!circle_ok && !square_ok)
    throw std::invalid_argument("assemble_constraints: weight set does not match boundary quadrature");
  const auto s = static_cast<Eigen::Index>(weights.size());
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(s, nm);
  for (const BoundarySample& sample : bquad.samples) {
    for (Eigen::Index i = 0; i < nm; ++i) {
      const double t = trace_eval(trace, basis, static_cast<std::size_t>(i), sample, bquad.kind);
      if (t == 0.0) continue;
      for (Eigen::Index j = 0; j < s; ++j) {
        const double psi = weights.value(static_cast<std::size_t>(j), sample);
        if (psi != 0.0) l(j, i) += sample.weight * psi * t;
      }
    }
  }
  return l;
}

Eigen::MatrixXd assemble_mass(const Basis1D& basis, const QuadratureRule1D& quad) {
  check_interval_match(basis, quad);
  const auto np = static_cast<Eigen::Index>(quad.size());
  const auto nm = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd v(np, nm);
  for (Eigen::Index q = 0; q < np; ++q)
    for (Eigen::Index i = 0; i < nm; ++i)
      v(q, i) = basis.value(static_cast<std::size_t>(i), quad.nodes[q]);
  return symmetrized(weighted_product(v, weight_vector(quad.weights), v));
}

Eigen::MatrixXd assemble_mass(const Basis2D& basis, const QuadratureRule2D& quad) {
  const Eigen::MatrixXd v = eval_table(basis, quad, Channel::value);
  return symmetrized(weighted_product(v, weight_vector(quad.weights), v));
}

ConstrainedSystem build_system(const EnergyForm& form, const std::function<double(double)>& f,
                               const Basis1D& basis, const WeightSet& weights,
                               const QuadratureRule1D& quad, bool with_mass) {
  if (basis.size() <= weights.size()) throw DegenerateConfigError(basis.size(), weights.size());
  ConstrainedSystem sys;
  sys.K = assemble_stiffness(form, basis, quad);
  sys.f = assemble_load(form, f, basis, quad);
  sys.L = assemble_constraints(weights, basis);
  if (with_mass) sys.M = assemble_mass(basis, quad);
  sys.basis1d = std::make_shared<Basis1D>(basis);
  return sys;
}

ConstrainedSystem build_system(const EnergyForm& form,
                               const std::function<double(double, double)>& f,
                               const Basis2D& basis, TraceKind trace, const WeightSet& weights,
                               const QuadratureRule2D& quad, const BoundaryQuadrature& bquad,
                               bool with_mass) {
  if (basis.size() <= weights.size()) throw DegenerateConfigError(basis.size(), weights.size());
  ConstrainedSystem sys;
  sys.K = assemble_stiffness(form, basis, quad);
  sys.f = assemble_load(form, f, basis, quad);
  sys.L = assemble_constraints(trace, weights, basis, bquad);
  if (with_mass) sys.M = assemble_mass(basis, quad);
  sys.basis2d = std::make_shared<Basis2D>(basis);
  return sys;
}

}  // namespace ritzlag
