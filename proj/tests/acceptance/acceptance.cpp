// Acceptance suite: one test per criterion, one PASS/FAIL line each.

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

#include "ritzlag/errors.hpp"
#include "ritzlag/problems.hpp"

using namespace ritzlag;

namespace {

constexpr double kPi = std::numbers::pi;

class Criterion : public ::testing::Test {
 protected:
  void report(int number, const char* summary) {
    std::printf("[%s] criterion %d: %s\n", HasFailure() ? "FAIL" : "PASS", number, summary);
  }
};

double wall_seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TEST_F(Criterion, C01_Problem1ClosedFormRegression) {
  TrialSolution sol;
  const double seconds = wall_seconds([&] {
    const ConstrainedSystem sys =
        build_problem_system({ProblemId::P1, 9, 0, BasisVariant::plain, 0.3, {}});
    sol = solve_saddle(sys);
  });
  EXPECT_NEAR(sol.multipliers(0), -kPi / 2, 1e-8);
  EXPECT_NEAR(sol.multipliers(1), -kPi / 2, 1e-8);
  for (int n = 1; n <= 8; ++n) {
    const double want = (1.0 + (n % 2 == 0 ? 1.0 : -1.0)) / (static_cast<double>(n) * n);
    EXPECT_NEAR(sol.coefficients(n), want, 1e-8) << "cos " << n << "x";
  }
  const double c0 = -0.5 * (1.0 + 1.0 / 4 + 1.0 / 9 + 1.0 / 16);
  EXPECT_NEAR(sol.coefficients(0), c0, 1e-8);
  EXPECT_LT(seconds, 0.1);
  report(1, "Problem 1 multipliers and coefficients at N = 9");
}

TEST_F(Criterion, C02_Problem1Convergence) {
  double prev = 1e300;
  for (int n : {20, 40, 80}) {
    const ErrorReport rep = run_problem({ProblemId::P1, n, 0, BasisVariant::plain, 0.3, {}});
    EXPECT_LE(rep.sup_err, 3.0 / n) << "N=" << n;
    EXPECT_LT(rep.sup_err, prev) << "N=" << n;
    prev = rep.sup_err;
  }
  report(2, "Problem 1 sup error within 3/N and strictly decreasing");
}

TEST_F(Criterion, C03_Problem2Pathology) {
  const ErrorReport rep = run_problem({ProblemId::P2, 40, 0, BasisVariant::plain, 0.3, {}});
  const auto wrong_limit = [](double x) {
    return std::pow(x, 4) / 24.0 - kPi * std::pow(x, 3) / 12.0 + kPi * kPi * x * x / 24.0;
  };
  double sup_wrong = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = kPi * i / 1000.0;
    sup_wrong = std::max(sup_wrong, std::abs(rep.solution.value(x) - wrong_limit(x)));
  }
  EXPECT_LE(sup_wrong, 2e-2);
  const double gap = std::pow(kPi, 4) / 96.0;  // max |pi^3 x/24 - pi^2 x^2/24|
  EXPECT_NEAR(rep.sup_err, gap, 2e-2);
  report(3, "Problem 2 cosine solve converges to the wrong limit");
}

TEST_F(Criterion, C04_Problem2Corrected) {
  const ConstrainedSystem sys =
      build_problem_system({ProblemId::P2, 9, 0, BasisVariant::augmented, 0.3, {}});
  const TrialSolution sol = solve_saddle(sys);
  EXPECT_NEAR(sol.coefficients(0), std::pow(kPi, 3) / 24.0, 1e-8);
  EXPECT_NEAR(sol.coefficients(1), -kPi * kPi / 24.0, 1e-8);
  const ErrorReport rep = run_problem({ProblemId::P2, 20, 0, BasisVariant::augmented, 0.3, {}});
  EXPECT_LE(rep.sup_err, 1e-2);
  report(4, "Problem 2 augmented basis recovers the exact solution");
}

TEST_F(Criterion, C05_Problem3Coincidence) {
  const ErrorReport rep = run_problem({ProblemId::P3, 20, 0, BasisVariant::plain, 0.3, {}});
  EXPECT_LE(rep.sup_err, 1e-3);
  report(5, "Problem 3 cosine solve matches its exact solution");
}

TEST_F(Criterion, C06_TauAndBoundaryTermComparators) {
  const Basis1D basis = Basis1D::cosine(7, kPi);  // constants through cos 6x
  const QuadratureRule1D quad = composite_gauss(10, 8, 0.0, kPi);
  const auto one = [](double) { return 1.0; };
  const std::vector<EndpointFunctional> bcs{{0.0, 0}, {kPi, 0}};
  {
    auto [a, b] = tau_system(basis, {0, 1, 2, 3, 4}, bcs, one, quad);
    EXPECT_EQ(classify_square_system(a, b).tag, Consistency::inconsistent);
  }
  {
    auto [a, b] = tau_system(basis, {2, 3, 4, 5, 6}, bcs, one, quad);
    EXPECT_EQ(classify_square_system(a, b).tag, Consistency::trivial_only);
  }
  {
    auto [a, b] = boundary_term_system(basis, one, quad);
    EXPECT_EQ(classify_square_system(a, b).tag, Consistency::inconsistent);
  }
  report(6, "tau and boundary-term comparator verdicts");
}

TEST_F(Criterion, C07_DiskMembraneErrorBand) {
  ErrorReport fine;
  const double seconds = wall_seconds(
      [&] { fine = run_problem({ProblemId::P4, 5, 4, BasisVariant::plain, 0.3, {}}); });
  EXPECT_LE(std::abs(fine.central_err_pct), 0.2);
  EXPECT_LE(std::abs(fine.boundary_err_pct), 0.2);
  const ErrorReport coarse = run_problem({ProblemId::P4, 3, 2, BasisVariant::plain, 0.3, {}});
  EXPECT_LT(std::abs(fine.central_err_pct), std::abs(coarse.central_err_pct));
  EXPECT_LT(std::abs(fine.boundary_err_pct), std::abs(coarse.boundary_err_pct));
  EXPECT_LT(seconds, 5.0);
  report(7, "disk membrane errors at (5, 4) inside the band and improving");
}

TEST_F(Criterion, C08_ClampedPlateCentralError) {
  const ErrorReport rep = run_problem({ProblemId::P5, 10, 5, BasisVariant::plain, 0.3, {}});
  EXPECT_LE(std::abs(rep.central_err_pct), 1.0);
  report(8, "plain cosine plate within 1 pp of the clamped FD reference");
}

TEST_F(Criterion, C09_SimplySupportedPlateErrors) {
  const ErrorReport fine = run_problem({ProblemId::P5, 10, 5, BasisVariant::augmented, 0.3, {}});
  EXPECT_LE(std::abs(fine.central_err_pct), 1.5);
  EXPECT_LE(std::abs(fine.boundary_err_pct), 3.0);
  const ErrorReport coarse = run_problem({ProblemId::P5, 6, 3, BasisVariant::augmented, 0.3, {}});
  EXPECT_LT(std::abs(fine.central_err_pct), std::abs(coarse.central_err_pct));
  report(9, "augmented plate against the SS series, improving to (10, 5)");
}

TEST_F(Criterion, C10_Eigenfrequencies) {
  // Reported reference frequencies for the (10, 5) configuration, row-major
  // in (m, n).
  const double reported[3][3] = {{19.61797, 49.06479, 98.33527},
                                 {49.06479, 77.55724, 126.62091},
                                 {99.03778, 126.62091, 177.73211}};
  FrequencyReport rep;
  const double seconds = wall_seconds(
      [&] { rep = run_modes({ProblemId::P6, 10, 5, BasisVariant::augmented, 0.3, {}}); });
  ASSERT_EQ(rep.table.size(), 9u);
  for (const FrequencyEntry& e : rep.table) {
    const double want = reported[e.m - 1][e.n - 1];
    EXPECT_LE(std::abs(e.omega_est - want) / want, 0.005) << "omega_" << e.m << e.n;
    EXPECT_LE(std::abs(e.omega_est - e.omega_exact) / e.omega_exact, 0.02)
        << "omega_" << e.m << e.n;
  }
  EXPECT_LT(seconds, 10.0);
  report(10, "nine paired frequencies vs the reported and exact values");
}

TEST_F(Criterion, C11_PropertySuite) {
  // Block symmetry and mass definiteness across the 2D problems.
  {
    const ConstrainedSystem p4 =
        build_problem_system({ProblemId::P4, 5, 4, BasisVariant::plain, 0.3, {}}, true);
    const ConstrainedSystem p5 =
        build_problem_system({ProblemId::P5, 6, 3, BasisVariant::augmented, 0.3, {}}, true);
    for (const ConstrainedSystem* sys : {&p4, &p5}) {
      EXPECT_LE((sys->K - sys->K.transpose()).cwiseAbs().maxCoeff(),
                1e-12 * sys->K.cwiseAbs().maxCoeff());
      EXPECT_LE((*sys->M - sys->M->transpose()).cwiseAbs().maxCoeff(),
                1e-12 * sys->M->cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*sys->M);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
    // Saddle residuals and constraint-rank checks.
    for (const ConstrainedSystem* sys : {&p4, &p5}) {
      EXPECT_EQ(rank_of(sys->L).rank, static_cast<int>(sys->s_total()));
      const TrialSolution sol = solve_saddle(*sys);
      EXPECT_LE((sys->K * sol.coefficients + sys->f + sys->L.transpose() * sol.multipliers)
                    .lpNorm<Eigen::Infinity>(),
                1e-9 * (1.0 + sys->f.lpNorm<Eigen::Infinity>()));
      EXPECT_LE((sys->L * sol.coefficients).lpNorm<Eigen::Infinity>(),
                1e-9 * (1.0 + sol.coefficients.lpNorm<Eigen::Infinity>()));
    }
  }

  // Nullspace reduction agrees with the explicit block pencil.
  {
    std::mt19937 rng(1234);
    std::normal_distribution<double> gauss;
    for (int rep = 0; rep < 8; ++rep) {
      const int n = 4 + static_cast<int>(rng() % 5);
      const int s = 1 + static_cast<int>(rng() % (n - 2));
      Eigen::MatrixXd a(n, n), l(s, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
      const Eigen::MatrixXd k = a * a.transpose() + n * Eigen::MatrixXd::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
      const Eigen::MatrixXd m = a * a.transpose() + n * Eigen::MatrixXd::Identity(n, n);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < n; ++j) l(i, j) = gauss(rng);
      if (rank_of(l).rank < s) continue;

      Eigen::MatrixXd pa = Eigen::MatrixXd::Zero(n + s, n + s);
      pa.topLeftCorner(n, n) = k;
      pa.topRightCorner(n, s) = l.transpose();
      pa.bottomLeftCorner(s, n) = l;
      Eigen::MatrixXd pb = Eigen::MatrixXd::Zero(n + s, n + s);
      pb.topLeftCorner(n, n) = m;
      Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> qz(pa, pb);
      std::vector<double> finite;
      for (Eigen::Index i = 0; i < qz.alphas().size(); ++i) {
        const std::complex<double> alpha = qz.alphas()(i);
        const double beta = qz.betas()(i);
        if (std::abs(beta) < 1e-10 * (1.0 + std::abs(alpha))) continue;
        const std::complex<double> mu = alpha / beta;
        if (std::abs(mu.imag()) > 1e-8 * (1.0 + std::abs(mu.real()))) continue;
        finite.push_back(mu.real());
      }
      std::sort(finite.begin(), finite.end());
      const ModeSet reduced = solve_constrained_gevp(k, m, l);
      ASSERT_EQ(static_cast<int>(finite.size()), n - s);
      for (int i = 0; i < n - s; ++i)
        EXPECT_NEAR(reduced.eigenvalues(i), finite[static_cast<std::size_t>(i)],
                    1e-9 * (1.0 + std::abs(finite[static_cast<std::size_t>(i)])));
    }
  }

  // Energy monotone in s (disk) and in N (interval).
  {
    double prev = -1e300;
    for (int s : {2, 3, 4, 5}) {
      const ConstrainedSystem sys =
          build_problem_system({ProblemId::P4, 6, s, BasisVariant::plain, 0.3, {}});
      const double j = energy_value(solve_saddle(sys), sys);
      EXPECT_GE(j, prev - 1e-10);
      prev = j;
    }
    prev = 1e300;
    for (int n : {5, 10, 20, 40}) {
      const ConstrainedSystem sys =
          build_problem_system({ProblemId::P1, n, 0, BasisVariant::plain, 0.3, {}});
      const double j = energy_value(solve_saddle(sys), sys);
      EXPECT_LE(j, prev + 1e-12);
      EXPECT_GE(j, -std::pow(kPi, 3) / 24.0 - 1e-12);
      prev = j;
    }
  }

  // Multipliers converge while endpoint slopes stay pinned at zero.
  {
    const ConstrainedSystem sys =
        build_problem_system({ProblemId::P1, 9, 0, BasisVariant::plain, 0.3, {}});
    const TrialSolution sol = solve_saddle(sys);
    EXPECT_LE(std::abs(sol.eval(0.0).d1), 1e-12);
    EXPECT_LE(std::abs(sol.multipliers(0) + kPi / 2), 1e-9);
  }

  // Completeness diagnostic: positive bending-norm floor for x^2 under the
  // cosine system, zero residual once x and x^2 are adjoined.
  {
    const auto x2 = [](double x) { return Eval1D{x * x, 2 * x, 2.0}; };
    const Basis1D cosine = Basis1D::cosine(40, kPi);
    for (int n : {10, 25, 40})
      EXPECT_GE(sobolev_residual(x2, cosine, SobolevProduct::w22, n).residual,
                2.0 * std::sqrt(kPi) - 1e-6);
    const Basis1D augmented = Basis1D::augmented_cosine(12, kPi);
    EXPECT_LE(sobolev_residual(x2, augmented, SobolevProduct::w22, 12).residual, 1e-10);
  }

  // Oracle cross-checks.
  {
    const ReferenceSolution series = exact_disk();
    const ReferenceSolution fd = fd_radial_disk(100000);
    double sup = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = i / 1000.0;
      sup = std::max(sup, std::abs(series(r) - fd(r)));
    }
    EXPECT_LE(sup, 1e-8);
    const ReferenceSolution navier = navier_ss_plate();
    const ReferenceSolution fd_ss = fd_biharmonic_plate(65, PlateBC::simply_supported);
    EXPECT_LE(std::abs(navier(0.5, 0.5) - fd_ss(0.5, 0.5)), 1e-5);
  }

  report(11, "property suite: symmetry, residuals, ranks, pencils, energies, oracles");
}
