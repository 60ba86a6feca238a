#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>

#include "ritzlag/basis.hpp"
#include "ritzlag/quadrature.hpp"
#include "ritzlag/weights.hpp"

namespace ritzlag {

/// Quadratic energy J(u) = 1/2 B(u, u) + sigma * integral of f*u.
///
/// dirichlet_gradient:    B(u, v) = integral grad(u).grad(v)   (u_x v_x in 1D)
/// second_derivative_1d:  B(u, v) = integral u'' v''
/// kirchhoff_plate(nu):   B(u, v) = integral u_xx v_xx + u_yy v_yy
///                        + nu (u_xx v_yy + u_yy v_xx) + 2(1-nu) u_xy v_xy
struct EnergyForm {
  enum class Kind { dirichlet_gradient, second_derivative_1d, kirchhoff_plate };

  Kind kind = Kind::dirichlet_gradient;
  double nu = 0.3;
  double load_sign = 1.0;

  static EnergyForm dirichlet_gradient(double load_sign = 1.0);
  static EnergyForm second_derivative_1d(double load_sign = -1.0);
  static EnergyForm kirchhoff_plate(double nu = 0.3, double load_sign = -1.0);
};

/// Assembled blocks of the constrained quadratic system: stiffness K, load f,
/// constraint matrix L, and optionally the mass matrix M. Stationarity of the
/// Lagrange functional reads K a + f + L^T lambda = 0, L a = 0.
struct ConstrainedSystem {
  Eigen::MatrixXd K;
  Eigen::VectorXd f;
  Eigen::MatrixXd L;
  std::optional<Eigen::MatrixXd> M;

  std::shared_ptr<const Basis1D> basis1d;
  std::shared_ptr<const Basis2D> basis2d;

  std::size_t n_total() const { return static_cast<std::size_t>(K.rows()); }
  std::size_t s_total() const { return static_cast<std::size_t>(L.rows()); }
  double size_ratio() const { return static_cast<double>(n_total()) / static_cast<double>(s_total()); }
};

Eigen::MatrixXd assemble_stiffness(const EnergyForm& form, const Basis1D& basis,
                                   const QuadratureRule1D& quad);
Eigen::MatrixXd assemble_stiffness(const EnergyForm& form, const Basis2D& basis,
                                   const QuadratureRule2D& quad);

Eigen::VectorXd assemble_load(const EnergyForm& form, const std::function<double(double)>& f,
                              const Basis1D& basis, const QuadratureRule1D& quad);
Eigen::VectorXd assemble_load(const EnergyForm& form,
                              const std::function<double(double, double)>& f, const Basis2D& basis,
                              const QuadratureRule2D& quad);

/// Endpoint constraints (1D): L[j][i] is the exact point evaluation of
/// member i (or its derivative) at weight j's endpoint.
Eigen::MatrixXd assemble_constraints(const WeightSet& weights, const Basis1D& basis);

/// Boundary constraints (2D): L[j][i] = <psi_j, trace of member i> via
/// boundary quadrature.
Eigen::MatrixXd assemble_constraints(TraceKind trace, const WeightSet& weights,
                                     const Basis2D& basis, const BoundaryQuadrature& bquad);

Eigen::MatrixXd assemble_mass(const Basis1D& basis, const QuadratureRule1D& quad);
Eigen::MatrixXd assemble_mass(const Basis2D& basis, const QuadratureRule2D& quad);

/// Assemble the full system for a 1D problem with endpoint constraints.
/// Throws DegenerateConfigError unless N_tot > s_tot.
ConstrainedSystem build_system(const EnergyForm& form, const std::function<double(double)>& f,
                               const Basis1D& basis, const WeightSet& weights,
                               const QuadratureRule1D& quad, bool with_mass = false);

/// Assemble the full system for a 2D problem with boundary-weight constraints.
ConstrainedSystem build_system(const EnergyForm& form,
                               const std::function<double(double, double)>& f,
                               const Basis2D& basis, TraceKind trace, const WeightSet& weights,
                               const QuadratureRule2D& quad, const BoundaryQuadrature& bquad,
                               bool with_mass = false);

}  // namespace ritzlag
