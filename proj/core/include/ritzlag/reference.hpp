#pragma once

#include <functional>
#include <string>

namespace ritzlag {

enum class ProblemId { P1, P2, P3, P4, P5, P6 };

const char* to_string(ProblemId id);
ProblemId problem_from_string(const std::string& name);

enum class ReferenceKind { closed_form, series, fd_oracle };

/// Reference solution handle: a pointwise evaluator plus provenance and, for
/// truncated series / finite-difference oracles, an error estimate.
class ReferenceSolution {
 public:
  ReferenceSolution(ReferenceKind kind, std::function<double(double)> eval1,
                    std::function<double(double, double)> eval2, double truncation_estimate,
                    std::string provenance)
      : kind_(kind),
        eval1_(std::move(eval1)),
        eval2_(std::move(eval2)),
        truncation_estimate_(truncation_estimate),
        provenance_(std::move(provenance)) {}

  ReferenceKind kind() const { return kind_; }
  double truncation_estimate() const { return truncation_estimate_; }
  const std::string& provenance() const { return provenance_; }

  double operator()(double x) const { return eval1_(x); }
  double operator()(double x, double y) const { return eval2_(x, y); }

 private:
  ReferenceKind kind_;
  std::function<double(double)> eval1_;
  std::function<double(double, double)> eval2_;
  double truncation_estimate_ = 0.0;
  std::string provenance_;
};

/// Closed-form solutions of the three 1D problems on [0, pi] with f = 1.
ReferenceSolution exact_1d(ProblemId id);

/// Membrane deflection on the unit disk under f = cos(r): series solution in
/// gamma, Ci(1) and a rapidly convergent power series, truncated below 1e-14.
ReferenceSolution exact_disk();

/// Independent disk oracle: finite differences on the radial two-point BVP
/// u'' + u'/r = cos r, u'(0) = 0, u(1) = 0.
ReferenceSolution fd_radial_disk(int grid_points = 100000);

/// Simply supported square plate under uniform load; double-sine series
/// summed over odd indices until the tail bound drops below 1e-12. The
/// result does not depend on the Poisson ratio.
ReferenceSolution navier_ss_plate(double load = 1.0);

enum class PlateBC { clamped, simply_supported };

/// 13-point finite-difference solve of the biharmonic plate equation with
/// unit load on the unit square; the evaluator Richardson-extrapolates
/// between the grids with n and 2n-1 nodes per side. Requires odd n >= 65.
ReferenceSolution fd_biharmonic_plate(int nodes_per_side = 65, PlateBC bc = PlateBC::clamped);

/// Exact nondimensional natural frequency of the simply supported unit
/// plate: omega_mn = pi^2 (m^2 + n^2).
double exact_ss_plate_omega(int m, int n);

namespace detail {
/// Single-grid central deflection of the FD plate solve (no extrapolation);
/// exposed for grid-convergence checks.
double fd_plate_center(int nodes_per_side, PlateBC bc);
}  // namespace detail

}  // namespace ritzlag
