#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ritzlag/assembly.hpp"
#include "ritzlag/reference.hpp"
#include "ritzlag/solvers.hpp"

namespace ritzlag {

enum class BasisVariant { plain, augmented };

const char* to_string(BasisVariant v);
BasisVariant basis_variant_from_string(const std::string& name);

/// Quadrature knobs; unset fields fall back to the defaults documented in
/// default_quadrature() below.
struct QuadratureOverrides {
  std::optional<int> panels_1d;             // 1D composite panels (default max(4, N))
  std::optional<int> disk_radial;           // default 32
  std::optional<int> disk_angular;          // default 64
  std::optional<int> circle_segment_order;  // Gauss order per arc (default 20)
  std::optional<int> edge_panels;           // composite panels per square edge (default max(4, N))

  bool operator==(const QuadratureOverrides&) const = default;
};

struct ProblemConfig {
  ProblemId id = ProblemId::P1;
  int n = 9;                                  // trial members per axis (total in 1D)
  int s = 0;                                  // boundary partition parameter (P4..P6)
  BasisVariant basis = BasisVariant::plain;
  double nu = 0.3;
  QuadratureOverrides quad;
};

/// Non-timing outputs of a static problem run. Central and boundary errors
/// are percentages of the maximum reference deflection, sign retained.
struct ErrorReport {
  ProblemId id = ProblemId::P1;
  int n = 0;
  int s = 0;
  BasisVariant basis = BasisVariant::plain;
  double nu = 0.3;
  double central_err_pct = 0.0;
  double boundary_err_pct = 0.0;
  double sup_err = 0.0;
  double energy = 0.0;
  double wall_ms = 0.0;
  std::size_t n_total = 0;
  std::size_t s_total = 0;
  TrialSolution solution;
};

struct FrequencyEntry {
  int m = 0;
  int n = 0;
  double omega_est = 0.0;
  double omega_exact = 0.0;
  double rel_err = 0.0;
};

struct FrequencyReport {
  int n = 0;
  int s = 0;
  double nu = 0.3;
  std::vector<FrequencyEntry> table;  // row-major (m, n), m outer
  ModeSet modes;
  double wall_ms = 0.0;
  std::size_t n_total = 0;
  std::size_t s_total = 0;
};

/// Assemble the configured problem's blocks (P3 drops its identically zero
/// derivative-trace rows; see the note in problems.cpp).
ConstrainedSystem build_problem_system(const ProblemConfig& config, bool with_mass = false);

/// The reference a configured run is scored against.
ReferenceSolution reference_for(const ProblemConfig& config);

/// Build, solve, and score a static problem (P1..P5).
ErrorReport run_problem(const ProblemConfig& config);

/// Solve the plate eigenproblem (P6) and pair the nine lowest frequencies
/// with the exact (m, n) grid.
FrequencyReport run_modes(const ProblemConfig& config);

enum class SampleDomain { interval, unit_square, unit_disk };

/// Sample grid used by the error metrics: 1001 points on an interval,
/// 101 x 101 on 2D domains (disk keeps in-circle points).
std::vector<std::pair<double, double>> metric_grid(SampleDomain domain, double length = 0.0);

/// Central and boundary errors as percentages of max |reference| over the
/// metric grid. Throws MetricError when the reference vanishes identically.
std::pair<double, double> relative_errors(const TrialSolution& u, const ReferenceSolution& ref,
                                          std::pair<double, double> central,
                                          std::pair<double, double> boundary, SampleDomain domain,
                                          double length = 0.0);

/// Max |u - ref| over the metric grid.
double sup_grid_error(const TrialSolution& u, const ReferenceSolution& ref, SampleDomain domain,
                      double length = 0.0);

/// J at the trial solution through its coefficient vector: a'Ka/2 + f'a.
double energy_value(const TrialSolution& u, const ConstrainedSystem& system);

enum class SobolevProduct {
  w21,  // u(0)v(0) + integral u' v'
  w22,  // u(0)v(0) + u'(0)v'(0) + integral u'' v''
};

struct SobolevResult {
  double residual = 0.0;
  int rank = 0;
  bool rank_deficient = false;
};

/// Norm of the best-approximation residual of the target in the span of the
/// first n members, via the Gram normal equations of the chosen product.
/// A numerically singular Gram matrix is reported and resolved by a
/// minimum-norm solve.
SobolevResult sobolev_residual(const std::function<Eval1D(double)>& target, const Basis1D& basis,
                               SobolevProduct product, std::size_t n_members);

/// Write reference values on the metric grid as CSV (x,u or x,y,u rows).
void write_reference_grid_csv(const ReferenceSolution& ref, SampleDomain domain,
                              const std::string& path, double length = 0.0);

}  // namespace ritzlag
