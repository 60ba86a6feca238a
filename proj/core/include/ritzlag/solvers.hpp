#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ritzlag/assembly.hpp"

namespace ritzlag {

/// Solved Ritz-Lagrange trial solution: coefficients a of the trial basis,
/// multipliers lambda of the boundary weights, and point evaluation.
struct TrialSolution {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd multipliers;
  double condition_estimate = 0.0;
  std::vector<std::string> warnings;

  std::shared_ptr<const Basis1D> basis1d;
  std::shared_ptr<const Basis2D> basis2d;

  Eval1D eval(double x) const;
  double value(double x) const { return eval(x).value; }
  Eval2D eval(double x, double y) const;
  double value(double x, double y) const { return eval(x, y).value; }
};

/// Numerical rank with threshold max(rows, cols) * eps * sigma_max
/// (overridable via threshold_override > 0).
struct RankResult {
  int rank = 0;
  Eigen::VectorXd singular_values;
  double threshold = 0.0;
};
RankResult rank_of(const Eigen::MatrixXd& a, double threshold_override = -1.0);

/// Orthonormal basis of ker(L) as columns; empty L (0 rows) yields the
/// identity.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& l);

/// Solve [[K, L^T], [L, 0]] (a; lambda) = (-f; 0) by a pivoted direct
/// factorization of the full indefinite block matrix.
///
/// Throws ConstraintRankError when L is row-rank deficient (naming the
/// dependent rows) and SingularSystemError when the saddle matrix is
/// singular. A condition estimate above 1e12 attaches a warning.
TrialSolution solve_saddle(const ConstrainedSystem& system);

/// Eigenpairs of the constrained pencil: eigenvalues mu ascending,
/// frequencies omega = sqrt(mu), M-orthonormal mode coefficient vectors and
/// the multiplier vector recovered for each mode.
struct ModeSet {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd frequencies;
  Eigen::MatrixXd modes;        // column i: coefficients of mode i
  Eigen::MatrixXd multipliers;  // column i: lambda of mode i
  std::shared_ptr<const Basis2D> basis2d;
};

/// Restrict K, M to ker(L) via an orthonormal nullspace basis Z and solve the
/// dense symmetric-definite problem (Z^T K Z) y = mu (Z^T M Z) y; modes are
/// c = Z y. Equivalent to the finite eigenvalues of the block pencil
/// ([[K, L^T], [L, 0]], [[M, 0], [0, 0]]).
ModeSet solve_constrained_gevp(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m,
                               const Eigen::MatrixXd& l);
ModeSet solve_constrained_gevp(const ConstrainedSystem& system);

enum class Consistency { unique_solution, inconsistent, underdetermined, trivial_only };

/// Rank-based classification of a linear system, with a least-squares
/// residual guard: relative residual above 1e-8 is inconsistent outright.
struct ConsistencyVerdict {
  Consistency tag = Consistency::unique_solution;
  int rank_a = 0;
  int rank_augmented = 0;
  double lsq_residual = 0.0;
  Eigen::VectorXd solution;  // least-squares / minimum-norm representative
};
ConsistencyVerdict classify_square_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

const char* to_string(Consistency tag);

/// Lanczos-tau comparator for u'' = f on [0, l]: residual-orthogonality rows
/// against the selected basis members followed by endpoint condition rows.
/// Requires |weight_indices| + |bc_rows| = basis size.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> tau_system(
    const Basis1D& basis, const std::vector<int>& weight_indices,
    const std::vector<EndpointFunctional>& bc_rows, const std::function<double(double)>& f,
    const QuadratureRule1D& quad);

/// Boundary-term comparator for u'' = f: Galerkin rows
/// integral (-u'' + f) phi_j + u(0) phi_j'(0) - u(l) phi_j'(l) = 0
/// with the basis members as weights.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> boundary_term_system(
    const Basis1D& basis, const std::function<double(double)>& f, const QuadratureRule1D& quad);

}  // namespace ritzlag
