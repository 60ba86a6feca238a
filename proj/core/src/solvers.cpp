#include "ritzlag/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ritzlag/errors.hpp"

namespace ritzlag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rank_threshold(const Eigen::MatrixXd& a, const Eigen::VectorXd& sv) {
  const double dim = static_cast<double>(std::max(a.rows(), a.cols()));
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  return dim * kEps * smax;
}

// C^T M C accumulated in extended precision; at mode-coefficient norms of
// 1e4 the double-precision triple product rounds at the 1e-8 level, which is
// exactly the orthonormality budget.
Eigen::MatrixXd m_gram_extended(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c) {
  const Eigen::Index n = c.rows();
  const Eigen::Index k = c.cols();
  std::vector<long double> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), 0.0L);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      long double acc = 0.0L;
      for (Eigen::Index l = 0; l < n; ++l)
        acc += static_cast<long double>(m(i, l)) * static_cast<long double>(c(l, j));
      t[static_cast<std::size_t>(i * k + j)] = acc;
    }
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      long double acc = 0.0L;
      for (Eigen::Index l = 0; l < n; ++l)
        acc += static_cast<long double>(c(l, i)) * t[static_cast<std::size_t>(l * k + j)];
      g(i, j) = static_cast<double>(acc);
      g(j, i) = g(i, j);
    }
  return g;
}

// Rows of L not selected as pivots by a rank-revealing QR of L^T; these are
// the rows dependent on the others.
std::vector<int> dependent_rows(const Eigen::MatrixXd& l, int rank) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(l.transpose());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<int> rows;
  for (Eigen::Index i = rank; i < perm.size(); ++i) rows.push_back(perm(i));
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

Eval1D TrialSolution::eval(double x) const {
  if (!basis1d) throw std::logic_error("trial solution has no 1D basis attached");
  Eval1D out;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
    const Eval1D e = basis1d->eval(static_cast<std::size_t>(i), x);
    out.value += coefficients(i) * e.value;
    out.d1 += coefficients(i) * e.d1;
    out.d2 += coefficients(i) * e.d2;
  }
  return out;
}

Eval2D TrialSolution::eval(double x, double y) const {
  if (!basis2d) throw std::logic_error("trial solution has no 2D basis attached");
  Eval2D out;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
    const Eval2D e = basis2d->eval(static_cast<std::size_t>(i), x, y);
    out.value += coefficients(i) * e.value;
    out.dx += coefficients(i) * e.dx;
    out.dy += coefficients(i) * e.dy;
    out.dxx += coefficients(i) * e.dxx;
    out.dyy += coefficients(i) * e.dyy;
    out.dxy += coefficients(i) * e.dxy;
  }
  return out;
}

RankResult rank_of(const Eigen::MatrixXd& a, double threshold_override) {
  RankResult result;
  if (a.rows() == 0 || a.cols() == 0) return result;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  result.singular_values = svd.singularValues();
  result.threshold =
      threshold_override > 0.0 ? threshold_override : rank_threshold(a, result.singular_values);
  for (Eigen::Index i = 0; i < result.singular_values.size(); ++i)
    if (result.singular_values(i) > result.threshold) ++result.rank;
  return result;
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& l) {
  if (l.rows() == 0) {
    // No constraints: the whole coefficient space.
    return Eigen::MatrixXd::Identity(l.cols(), l.cols());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double tol = rank_threshold(l, sv);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return svd.matrixV().rightCols(l.cols() - rank);
}

TrialSolution solve_saddle(const ConstrainedSystem& system) {
  const auto n = static_cast<Eigen::Index>(system.n_total());
  const auto s = static_cast<Eigen::Index>(system.s_total());

  if (s > 0) {
    const RankResult lr = rank_of(system.L);
    if (lr.rank < s) {
      const std::vector<int> rows = dependent_rows(system.L, lr.rank);
      std::ostringstream msg;
      msg << "constraint matrix is rank deficient (rank " << lr.rank << " of " << s
          << "); dependent rows:";
      for (int r : rows) msg << ' ' << r;
      throw ConstraintRankError(msg.str(), rows);
    }
  }

  Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(n + s, n + s);
  saddle.topLeftCorner(n, n) = system.K;
  if (s > 0) {
    saddle.topRightCorner(n, s) = system.L.transpose();
    saddle.bottomLeftCorner(s, n) = system.L;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + s);
  rhs.head(n) = -system.f;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(saddle);
  if (!lu.isInvertible()) throw SingularSystemError("saddle-point matrix is numerically singular");

  Eigen::VectorXd sol = lu.solve(rhs);
  // One step of iterative refinement keeps the stationarity residual near
  // machine precision for the stiffer bending systems.
  sol += lu.solve(rhs - saddle * sol);

  TrialSolution out;
  out.coefficients = sol.head(n);
  out.multipliers = sol.tail(s);
  out.basis1d = system.basis1d;
  out.basis2d = system.basis2d;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(saddle);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  out.condition_estimate = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (out.condition_estimate > 1e12) {
    std::ostringstream msg;
    msg << "saddle system condition estimate " << out.condition_estimate << " exceeds 1e12";
    out.warnings.push_back(msg.str());
  }
  return out;
}

ModeSet solve_constrained_gevp(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m,
                               const Eigen::MatrixXd& l) {
  if (l.rows() > 0) {
    const RankResult lr = rank_of(l);
    if (lr.rank < l.rows()) {
      const std::vector<int> rows = dependent_rows(l, lr.rank);
      std::ostringstream msg;
      msg << "constraint matrix is rank deficient (rank " << lr.rank << " of " << l.rows() << ")";
      throw ConstraintRankError(msg.str(), rows);
    }
  }

  const Eigen::MatrixXd z =
      l.rows() > 0 ? nullspace_basis(l) : Eigen::MatrixXd::Identity(k.rows(), k.cols());
  const Eigen::MatrixXd ka = 0.5 * (z.transpose() * k * z + (z.transpose() * k * z).transpose());
  const Eigen::MatrixXd mb = 0.5 * (z.transpose() * m * z + (z.transpose() * m * z).transpose());

  // Jacobi scaling of the reduced pencil keeps the projected mass matrix
  // well conditioned, which the M-orthonormality of the modes inherits.
  Eigen::VectorXd scale = mb.diagonal();
  for (Eigen::Index i = 0; i < scale.size(); ++i)
    scale(i) = scale(i) > 0.0 ? std::sqrt(scale(i)) : 1.0;
  const Eigen::VectorXd inv_scale = scale.cwiseInverse();
  const Eigen::MatrixXd ka_s = inv_scale.asDiagonal() * ka * inv_scale.asDiagonal();
  const Eigen::MatrixXd mb_s = inv_scale.asDiagonal() * mb * inv_scale.asDiagonal();

  Eigen::LLT<Eigen::MatrixXd> llt(mb_s);
  if (llt.info() != Eigen::Success)
    throw MassDegenerateError("projected mass matrix is not positive definite");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ka_s, mb_s);
  if (es.info() != Eigen::Success)
    throw SingularSystemError("generalized eigenvalue solve failed to converge");

  ModeSet out;
  out.eigenvalues = es.eigenvalues();
  out.frequencies = out.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  out.modes = z * (inv_scale.asDiagonal() * es.eigenvectors());

  // One symmetric re-orthonormalization pass in the M inner product; the
  // near-dependent augmented families leave the projected mass with a large
  // condition number and the eigensolver alone drifts above the 1e-8
  // orthonormality budget.
  {
    const Eigen::MatrixXd gram = m_gram_extended(m, out.modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram);
    const Eigen::VectorXd inv_sqrt =
        ges.eigenvalues().cwiseMax(kEps).cwiseSqrt().cwiseInverse();
    out.modes = out.modes * (ges.eigenvectors() * inv_sqrt.asDiagonal() *
                             ges.eigenvectors().transpose());
  }

  // Fix each mode's sign by its largest-magnitude coefficient.
  for (Eigen::Index i = 0; i < out.modes.cols(); ++i) {
    Eigen::Index imax = 0;
    out.modes.col(i).cwiseAbs().maxCoeff(&imax);
    if (out.modes(imax, i) < 0.0) out.modes.col(i) = -out.modes.col(i);
  }

  // Recover multipliers from the top block of Eq-of-motion stationarity:
  // L^T lambda = mu M c - K c.
  out.multipliers = Eigen::MatrixXd::Zero(l.rows(), out.modes.cols());
  if (l.rows() > 0) {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(l.transpose());
    for (Eigen::Index i = 0; i < out.modes.cols(); ++i) {
      const Eigen::VectorXd resid = out.eigenvalues(i) * (m * out.modes.col(i)) - k * out.modes.col(i);
      out.multipliers.col(i) = qr.solve(resid);
    }
  }
  return out;
}

ModeSet solve_constrained_gevp(const ConstrainedSystem& system) {
  if (!system.M) throw std::invalid_argument("constrained GEVP needs an assembled mass matrix");
  ModeSet out = solve_constrained_gevp(system.K, *system.M, system.L);
  out.basis2d = system.basis2d;
  return out;
}

ConsistencyVerdict classify_square_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  ConsistencyVerdict verdict;
  verdict.rank_a = rank_of(a).rank;

  Eigen::MatrixXd aug(a.rows(), a.cols() + 1);
  aug << a, b;
  verdict.rank_augmented = rank_of(aug).rank;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  verdict.solution = svd.solve(b);
  verdict.lsq_residual = (a * verdict.solution - b).norm();
  const double rel_residual = verdict.lsq_residual / std::max(1.0, b.norm());

  if (rel_residual > 1e-8 || verdict.rank_augmented > verdict.rank_a) {
    verdict.tag = Consistency::inconsistent;
  } else if (verdict.rank_a == a.cols()) {
    const double scale = 1.0 + b.lpNorm<Eigen::Infinity>();
    verdict.tag = verdict.solution.lpNorm<Eigen::Infinity>() <= 1e-9 * scale
                      ? Consistency::trivial_only
                      : Consistency::unique_solution;
  } else {
    verdict.tag = Consistency::underdetermined;
  }
  return verdict;
}

const char* to_string(Consistency tag) {
  switch (tag) {
    case Consistency::unique_solution: return "unique_solution";
    case Consistency::inconsistent: return "inconsistent";
    case Consistency::underdetermined: return "underdetermined";
    case Consistency::trivial_only: return "trivial_only";
  }
  return "?";
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> tau_system(
    const Basis1D& basis, const std::vector<int>& weight_indices,
    const std::vector<EndpointFunctional>& bc_rows, const std::function<double(double)>& f,
    const QuadratureRule1D& quad) {
  const std::size_t n = basis.size();
  if (weight_indices.size() + bc_rows.size() != n)
    throw std::invalid_argument("tau_system: weight rows plus BC rows must equal the basis size");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

  Eigen::Index row = 0;
  for (int m : weight_indices) {
    if (m < 0 || static_cast<std::size_t>(m) >= n)
      throw std::invalid_argument("tau_system: weight index outside the basis");
    // integral (u'' - f) phi_m dx = 0, with f moved to the right-hand side.
    for (std::size_t i = 0; i < n; ++i) {
      double entry = 0.0;
      for (std::size_t q = 0; q < quad.size(); ++q)
        entry += quad.weights[q] * basis.eval(i, quad.nodes[q]).d2 *
                 basis.value(static_cast<std::size_t>(m), quad.nodes[q]);
      a(row, static_cast<Eigen::Index>(i)) = entry;
    }
    double load = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q)
      load += quad.weights[q] * f(quad.nodes[q]) *
              basis.value(static_cast<std::size_t>(m), quad.nodes[q]);
    b(row) = load;
    ++row;
  }
  const WeightSet bcs = WeightSet::endpoints(bc_rows);
  for (std::size_t j = 0; j < bc_rows.size(); ++j, ++row)
    for (std::size_t i = 0; i < n; ++i)
      a(row, static_cast<Eigen::Index>(i)) = bcs.apply_endpoint(j, basis, i);
  return {std::move(a), std::move(b)};
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> boundary_term_system(
    const Basis1D& basis, const std::function<double(double)>& f, const QuadratureRule1D& quad) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double len = basis.length();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eval1D wj0 = basis.eval(static_cast<std::size_t>(j), 0.0);
    const Eval1D wjl = basis.eval(static_cast<std::size_t>(j), len);
    for (Eigen::Index i = 0; i < n; ++i) {
      double entry = 0.0;
      for (std::size_t q = 0; q < quad.size(); ++q)
        entry += quad.weights[q] * (-basis.eval(static_cast<std::size_t>(i), quad.nodes[q]).d2) *
                 basis.value(static_cast<std::size_t>(j), quad.nodes[q]);
      const Eval1D ui0 = basis.eval(static_cast<std::size_t>(i), 0.0);
      const Eval1D uil = basis.eval(static_cast<std::size_t>(i), len);
      entry += ui0.value * wj0.d1 - uil.value * wjl.d1;
      a(j, i) = entry;
    }
    double load = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q)
      load += quad.weights[q] * f(quad.nodes[q]) *
              basis.value(static_cast<std::size_t>(j), quad.nodes[q]);
    b(j) = -load;
  }
  return {std::move(a), std::move(b)};
}

}  // namespace ritzlag
