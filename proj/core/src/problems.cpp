#include "ritzlag/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "ritzlag/errors.hpp"

namespace ritzlag {

namespace {

constexpr double kPi = std::numbers::pi;

int default_panels(int n) { return std::max(4, n); }

QuadratureRule1D interval_rule(const ProblemConfig& c, double length) {
  return composite_gauss(10, c.quad.panels_1d.value_or(default_panels(c.n)), 0.0, length);
}

QuadratureRule2D square_rule(const ProblemConfig& c) {
  const QuadratureRule1D axis =
      composite_gauss(10, c.quad.panels_1d.value_or(default_panels(c.n)), 0.0, 1.0);
  return tensor_square(axis, axis);
}

Basis1D axis_basis(const ProblemConfig& c, double length) {
  return c.basis == BasisVariant::augmented
             ? Basis1D::augmented_cosine(static_cast<std::size_t>(c.n), length)
             : Basis1D::cosine(static_cast<std::size_t>(c.n), length);
}

// Rows that pair against nothing (all entries at rounding level) constrain
// nothing and their multipliers never enter the internal equations; P3's
// derivative traces of cosines are the canonical case. Dropping them keeps
// the solver's full-row-rank contract intact.
void drop_zero_constraint_rows(ConstrainedSystem& sys) {
  if (sys.L.rows() == 0) return;
  const double scale = std::max(1.0, sys.L.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < sys.L.rows(); ++j)
    if (sys.L.row(j).cwiseAbs().maxCoeff() > 1e-12 * scale) keep.push_back(j);
  if (keep.size() == static_cast<std::size_t>(sys.L.rows())) return;
  Eigen::MatrixXd pruned(static_cast<Eigen::Index>(keep.size()), sys.L.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) pruned.row(static_cast<Eigen::Index>(r)) = sys.L.row(keep[r]);
  sys.L = std::move(pruned);
}

std::function<double(double, double)> membrane_load() {
  return [](double x, double y) { return std::cos(std::hypot(x, y)); };
}

void fmt_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

const char* to_string(BasisVariant v) {
  return v == BasisVariant::plain ? "plain" : "augmented";
}

BasisVariant basis_variant_from_string(const std::string& name) {
  if (name == "plain") return BasisVariant::plain;
  if (name == "augmented") return BasisVariant::augmented;
  throw std::invalid_argument("unknown basis variant: " + name);
}

ConstrainedSystem build_problem_system(const ProblemConfig& config, bool with_mass) {
  switch (config.id) {
    case ProblemId::P1: {
      const Basis1D basis = Basis1D::cosine(static_cast<std::size_t>(config.n), kPi);
      const WeightSet weights = WeightSet::endpoints({{0.0, 0}, {kPi, 0}});
      return build_system(EnergyForm::dirichlet_gradient(+1.0), [](double) { return 1.0; }, basis,
                          weights, interval_rule(config, kPi), with_mass);
    }
    case ProblemId::P2: {
      const Basis1D basis = axis_basis(config, kPi);
      const WeightSet weights = WeightSet::endpoints({{0.0, 0}, {kPi, 0}});
      return build_system(EnergyForm::second_derivative_1d(-1.0), [](double) { return 1.0; },
                          basis, weights, interval_rule(config, kPi), with_mass);
    }
    case ProblemId::P3: {
      const Basis1D basis = Basis1D::cosine(static_cast<std::size_t>(config.n), kPi);
      const WeightSet weights =
          WeightSet::endpoints({{0.0, 0}, {kPi, 0}, {0.0, 1}, {kPi, 1}});
      ConstrainedSystem sys =
          build_system(EnergyForm::second_derivative_1d(-1.0), [](double) { return 1.0; }, basis,
                       weights, interval_rule(config, kPi), with_mass);
      drop_zero_constraint_rows(sys);
      return sys;
    }
    case ProblemId::P4: {
      if (config.s < 1) throw std::invalid_argument("P4 needs a circle partition s >= 1");
      const Basis2D basis = Basis2D::monomials(static_cast<std::size_t>(config.n));
      const WeightSet weights = WeightSet::circle(config.s);
      const QuadratureRule2D quad = polar_disk(config.quad.disk_radial.value_or(32),
                                               config.quad.disk_angular.value_or(64));
      const BoundaryQuadrature bquad =
          circle_partition(config.s, config.quad.circle_segment_order.value_or(20));
      return build_system(EnergyForm::dirichlet_gradient(+1.0), membrane_load(), basis,
                          TraceKind::value, weights, quad, bquad, with_mass);
    }
    case ProblemId::P5:
    case ProblemId::P6: {
      if (config.s < 1) throw std::invalid_argument("plate problems need edge modes s >= 1");
      const Basis1D axis = axis_basis(config, 1.0);
      const Basis2D basis = Basis2D::tensor(axis, axis);
      const WeightSet weights = WeightSet::square_edge_cosines(config.s);
      const BoundaryQuadrature bquad =
          square_edges(10, config.quad.edge_panels.value_or(default_panels(config.n)));
      const double load = config.id == ProblemId::P5 ? 1.0 : 0.0;
      return build_system(EnergyForm::kirchhoff_plate(config.nu, -1.0),
                          [load](double, double) { return load; }, basis, TraceKind::value,
                          weights, square_rule(config), bquad,
                          with_mass || config.id == ProblemId::P6);
    }
  }
  throw std::invalid_argument("unknown problem id");
}

ReferenceSolution reference_for(const ProblemConfig& config) {
  switch (config.id) {
    case ProblemId::P1:
    case ProblemId::P2:
    case ProblemId::P3:
      return exact_1d(config.id);
    case ProblemId::P4:
      return exact_disk();
    case ProblemId::P5:
      return config.basis == BasisVariant::augmented ? navier_ss_plate()
                                                     : fd_biharmonic_plate(65, PlateBC::clamped);
    case ProblemId::P6:
      break;
  }
  throw std::invalid_argument("P6 is scored against exact frequencies, not a field reference");
}

std::vector<std::pair<double, double>> metric_grid(SampleDomain domain, double length) {
  std::vector<std::pair<double, double>> grid;
  if (domain == SampleDomain::interval) {
    const double len = length > 0.0 ? length : kPi;
    grid.reserve(1001);
    for (int i = 0; i <= 1000; ++i) grid.emplace_back(len * i / 1000.0, 0.0);
    return grid;
  }
  const int per_axis = 101;
  grid.reserve(per_axis * per_axis);
  for (int i = 0; i < per_axis; ++i) {
    for (int j = 0; j < per_axis; ++j) {
      double x = static_cast<double>(i) / (per_axis - 1);
      double y = static_cast<double>(j) / (per_axis - 1);
      if (domain == SampleDomain::unit_disk) {
        x = 2.0 * x - 1.0;
        y = 2.0 * y - 1.0;
        if (x * x + y * y > 1.0 + 1e-12) continue;
      }
      grid.emplace_back(x, y);
    }
  }
  return grid;
}

namespace {

double ref_at(const ReferenceSolution& ref, SampleDomain domain, double x, double y) {
  return domain == SampleDomain::interval ? ref(x) : ref(x, y);
}

double sol_at(const TrialSolution& u, SampleDomain domain, double x, double y) {
  return domain == SampleDomain::interval ? u.value(x) : u.value(x, y);
}

double max_abs_reference(const ReferenceSolution& ref, SampleDomain domain, double length) {
  double max_abs = 0.0;
  for (const auto& [x, y] : metric_grid(domain, length))
    max_abs = std::max(max_abs, std::abs(ref_at(ref, domain, x, y)));
  return max_abs;
}

}  // namespace

std::pair<double, double> relative_errors(const TrialSolution& u, const ReferenceSolution& ref,
                                          std::pair<double, double> central,
                                          std::pair<double, double> boundary, SampleDomain domain,
                                          double length) {
  const double max_abs = max_abs_reference(ref, domain, length);
  if (max_abs == 0.0) throw MetricError("reference solution vanishes; relative error undefined");
  const double c = sol_at(u, domain, central.first, central.second) -
                   ref_at(ref, domain, central.first, central.second);
  const double b = sol_at(u, domain, boundary.first, boundary.second) -
                   ref_at(ref, domain, boundary.first, boundary.second);
  return {100.0 * c / max_abs, 100.0 * b / max_abs};
}

double sup_grid_error(const TrialSolution& u, const ReferenceSolution& ref, SampleDomain domain,
                      double length) {
  double sup = 0.0;
  for (const auto& [x, y] : metric_grid(domain, length))
    sup = std::max(sup, std::abs(sol_at(u, domain, x, y) - ref_at(ref, domain, x, y)));
  return sup;
}

double energy_value(const TrialSolution& u, const ConstrainedSystem& system) {
  return 0.5 * u.coefficients.dot(system.K * u.coefficients) + system.f.dot(u.coefficients);
}

ErrorReport run_problem(const ProblemConfig& config) {
  if (config.id == ProblemId::P6)
    throw std::invalid_argument("P6 is an eigenproblem; use run_modes");
  const auto start = std::chrono::steady_clock::now();

  const ConstrainedSystem system = build_problem_system(config);
  const TrialSolution solution = solve_saddle(system);
  const ReferenceSolution ref = reference_for(config);

  SampleDomain domain = SampleDomain::interval;
  std::pair<double, double> central{kPi / 2.0, 0.0};
  std::pair<double, double> boundary{0.0, 0.0};
  double length = kPi;
  switch (config.id) {
    case ProblemId::P1:
    case ProblemId::P2:
    case ProblemId::P3:
      break;
    case ProblemId::P4:
      domain = SampleDomain::unit_disk;
      central = {0.0, 0.0};
      boundary = {0.0, 1.0};
      length = 0.0;
      break;
    default:
      domain = SampleDomain::unit_square;
      central = {0.5, 0.5};
      boundary = {0.0, 0.0};
      length = 0.0;
      break;
  }

  ErrorReport report;
  report.id = config.id;
  report.n = config.n;
  report.s = config.s;
  report.basis = config.basis;
  report.nu = config.nu;
  report.n_total = system.n_total();
  report.s_total = system.s_total();

  // One pass over the metric grid covers max|ref| and the sup error.
  double max_abs = 0.0;
  double sup = 0.0;
  for (const auto& [x, y] : metric_grid(domain, length)) {
    const double r = ref_at(ref, domain, x, y);
    max_abs = std::max(max_abs, std::abs(r));
    sup = std::max(sup, std::abs(sol_at(solution, domain, x, y) - r));
  }
  if (max_abs == 0.0) throw MetricError("reference solution vanishes; relative error undefined");
  report.sup_err = sup;
  report.central_err_pct = 100.0 *
                           (sol_at(solution, domain, central.first, central.second) -
                            ref_at(ref, domain, central.first, central.second)) /
                           max_abs;
  report.boundary_err_pct = 100.0 *
                            (sol_at(solution, domain, boundary.first, boundary.second) -
                             ref_at(ref, domain, boundary.first, boundary.second)) /
                            max_abs;
  report.energy = energy_value(solution, system);
  report.solution = solution;

  const auto stop = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

namespace {

double mode_value(const ModeSet& modes, Eigen::Index mode, double x, double y) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < modes.modes.rows(); ++k)
    sum += modes.modes(k, mode) * modes.basis2d->value(static_cast<std::size_t>(k), x, y);
  return sum;
}

// Interior sign changes along an axis-parallel probe line; used to read the
// (m, n) pattern off a computed mode.
int sign_changes_along(const ModeSet& modes, Eigen::Index mode, bool along_x, double other) {
  const int samples = 101;
  std::vector<double> v(samples);
  double max_abs = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 0.5) / samples;
    v[i] = along_x ? mode_value(modes, mode, t, other) : mode_value(modes, mode, other, t);
    max_abs = std::max(max_abs, std::abs(v[i]));
  }
  if (max_abs == 0.0) return 0;
  const double threshold = 0.05 * max_abs;
  int changes = 0;
  double prev = 0.0;
  for (int i = 0; i < samples; ++i) {
    if (std::abs(v[i]) < threshold) continue;
    if (prev != 0.0 && v[i] * prev < 0.0) ++changes;
    prev = v[i];
  }
  return changes;
}

}  // namespace

FrequencyReport run_modes(const ProblemConfig& config) {
  if (config.id != ProblemId::P6)
    throw std::invalid_argument("run_modes applies to the plate eigenproblem P6");
  const auto start = std::chrono::steady_clock::now();

  const ConstrainedSystem system = build_problem_system(config, /*with_mass=*/true);
  const ModeSet modes = solve_constrained_gevp(system);
  if (modes.eigenvalues.size() < 9)
    throw std::invalid_argument("P6 needs at least nine constrained modes; increase N");

  struct Cell {
    int m, n;
    double exact;
    Eigen::Index mode = -1;
  };
  std::vector<Cell> cells;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) cells.push_back({m, n, exact_ss_plate_omega(m, n)});
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.exact != b.exact) return a.exact < b.exact;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });

  // Each cell takes the nearest unused computed frequency, in ascending
  // exact order. The relaxed boundary conditions admit extra low modes with
  // no (m, n) counterpart; nearest matching passes over them.
  std::vector<bool> used(static_cast<std::size_t>(modes.frequencies.size()), false);
  for (Cell& cell : cells) {
    Eigen::Index best = -1;
    double best_dist = 0.0;
    for (Eigen::Index i = 0; i < modes.frequencies.size(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double dist = std::abs(modes.frequencies(i) - cell.exact);
      if (best < 0 || dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    cell.mode = best;
    used[static_cast<std::size_t>(best)] = true;
  }

  // Nodal counts decide the degenerate pairs when the computed modes are
  // clean enough to read.
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    Cell& a = cells[i];
    Cell& b = cells[i + 1];
    if (std::abs(a.exact - b.exact) > 1e-9) continue;
    const int ax = sign_changes_along(modes, a.mode, true, 0.43);
    const int ay = sign_changes_along(modes, a.mode, false, 0.43);
    const int bx = sign_changes_along(modes, b.mode, true, 0.43);
    const int by = sign_changes_along(modes, b.mode, false, 0.43);
    const bool a_matches_b = ax == b.m - 1 && ay == b.n - 1;
    const bool b_matches_a = bx == a.m - 1 && by == a.n - 1;
    const bool a_matches_a = ax == a.m - 1 && ay == a.n - 1;
    const bool b_matches_b = bx == b.m - 1 && by == b.n - 1;
    if (a_matches_b && b_matches_a && !(a_matches_a && b_matches_b)) std::swap(a.mode, b.mode);
    ++i;
  }

  FrequencyReport report;
  report.n = config.n;
  report.s = config.s;
  report.nu = config.nu;
  report.modes = modes;
  report.n_total = system.n_total();
  report.s_total = system.s_total();
  report.table.resize(9);
  for (const Cell& cell : cells) {
    FrequencyEntry entry;
    entry.m = cell.m;
    entry.n = cell.n;
    entry.omega_est = modes.frequencies(cell.mode);
    entry.omega_exact = cell.exact;
    entry.rel_err = (entry.omega_est - entry.omega_exact) / entry.omega_exact;
    report.table[static_cast<std::size_t>((cell.m - 1) * 3 + (cell.n - 1))] = entry;
  }

  const auto stop = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

SobolevResult sobolev_residual(const std::function<Eval1D(double)>& target, const Basis1D& basis,
                               SobolevProduct product, std::size_t n_members) {
  if (n_members == 0 || n_members > basis.size())
    throw std::invalid_argument("sobolev_residual: member count outside the basis");
  const auto n = static_cast<Eigen::Index>(n_members);
  const QuadratureRule1D quad =
      composite_gauss(10, default_panels(static_cast<int>(n_members)), 0.0, basis.length());
  const bool second = product == SobolevProduct::w22;

  const auto inner = [&](const std::function<Eval1D(double)>& u,
                         const std::function<Eval1D(double)>& v) {
    const Eval1D u0 = u(0.0);
    const Eval1D v0 = v(0.0);
    double result = u0.value * v0.value;
    if (second) result += u0.d1 * v0.d1;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Eval1D uq = u(quad.nodes[q]);
      const Eval1D vq = v(quad.nodes[q]);
      result += quad.weights[q] * (second ? uq.d2 * vq.d2 : uq.d1 * vq.d1);
    }
    return result;
  };
  const auto member_fn = [&basis](std::size_t i) {
    return [&basis, i](double x) { return basis.eval(i, x); };
  };

  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      gram(i, j) = inner(member_fn(static_cast<std::size_t>(i)), member_fn(static_cast<std::size_t>(j)));
      gram(j, i) = gram(i, j);
    }
    rhs(i) = inner(member_fn(static_cast<std::size_t>(i)), target);
  }

  // Jacobi scaling keeps the n^4-spread bending Gram matrices well enough
  // conditioned for a direct solve.
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) scale(i) = gram(i, i) > 0.0 ? std::sqrt(gram(i, i)) : 1.0;
  const Eigen::MatrixXd gs =
      scale.cwiseInverse().asDiagonal() * gram * scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd bs = scale.cwiseInverse().asDiagonal() * rhs;

  SobolevResult result;
  const RankResult rank = rank_of(gs);
  result.rank = rank.rank;
  Eigen::VectorXd cs;
  if (rank.rank < n) {
    result.rank_deficient = true;
    cs = gs.completeOrthogonalDecomposition().solve(bs);
  } else {
    cs = Eigen::LDLT<Eigen::MatrixXd>(gs).solve(bs);
  }
  const Eigen::VectorXd coeff = scale.cwiseInverse().asDiagonal() * cs;

  const auto residual_fn = [&](double x) {
    Eval1D r = target(x);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eval1D e = basis.eval(static_cast<std::size_t>(i), x);
      r.value -= coeff(i) * e.value;
      r.d1 -= coeff(i) * e.d1;
      r.d2 -= coeff(i) * e.d2;
    }
    return r;
  };
  const double norm_sq = inner(residual_fn, residual_fn);
  result.residual = std::sqrt(std::max(0.0, norm_sq));
  return result;
}

void write_reference_grid_csv(const ReferenceSolution& ref, SampleDomain domain,
                              const std::string& path, double length) {
  std::string out;
  if (domain == SampleDomain::interval) {
    out += "x,u\n";
    for (const auto& [x, y] : metric_grid(domain, length)) {
      fmt_double(out, x);
      out += ',';
      fmt_double(out, ref(x));
      out += '\n';
    }
  } else {
    out += "x,y,u\n";
    for (const auto& [x, y] : metric_grid(domain, length)) {
      fmt_double(out, x);
      out += ',';
      fmt_double(out, y);
      out += ',';
      fmt_double(out, ref(x, y));
      out += '\n';
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << out;
}

}  // namespace ritzlag
