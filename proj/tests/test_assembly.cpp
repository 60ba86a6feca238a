#include "ritzlag/assembly.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "ritzlag/errors.hpp"

using namespace ritzlag;

namespace {
constexpr double kPi = std::numbers::pi;

QuadratureRule1D interval_quad(int n) { return composite_gauss(10, std::max(4, n), 0.0, kPi); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Stiffness1D, GradientFormOnCosines) {
  const Basis1D basis = Basis1D::cosine(6, kPi);
  const Eigen::MatrixXd k = assemble_stiffness(EnergyForm::dirichlet_gradient(), basis, interval_quad(6));
  EXPECT_NEAR(k(0, 0), 0.0, 1e-12);
  for (int n = 1; n < 6; ++n) EXPECT_NEAR(k(n, n), kPi * n * n / 2.0, 1e-11);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) EXPECT_NEAR(k(i, j), 0.0, 1e-11);
}

TEST(Stiffness1D, BendingFormOnCosines) {
  const Basis1D basis = Basis1D::cosine(6, kPi);
  const Eigen::MatrixXd k =
      assemble_stiffness(EnergyForm::second_derivative_1d(), basis, interval_quad(6));
  for (int n = 1; n < 6; ++n) EXPECT_NEAR(k(n, n), kPi * std::pow(n, 4) / 2.0, 1e-10);
}

TEST(Stiffness2D, ConstantMemberRowVanishes) {
  const Basis2D basis = Basis2D::monomials(3);
  const Eigen::MatrixXd k =
      assemble_stiffness(EnergyForm::dirichlet_gradient(), basis, polar_disk(16, 32));
  EXPECT_NEAR(k.row(0).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  EXPECT_NEAR(k.col(0).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Stiffness2D, KernelContainsConstant) {
  const Basis2D basis = Basis2D::monomials(4);
  const Eigen::MatrixXd k =
      assemble_stiffness(EnergyForm::dirichlet_gradient(), basis, polar_disk(24, 48));
  Eigen::VectorXd constant = Eigen::VectorXd::Zero(k.cols());
  constant(0) = 1.0;
  EXPECT_LE((k * constant).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(Load1D, SignConventionPerForm) {
  const Basis1D basis = Basis1D::cosine(5, kPi);
  const auto one = [](double) { return 1.0; };
  const Eigen::VectorXd f1 = assemble_load(EnergyForm::dirichlet_gradient(+1.0), one, basis, interval_quad(5));
  EXPECT_NEAR(f1(0), kPi, 1e-12);
  for (int n = 1; n < 5; ++n) EXPECT_NEAR(f1(n), 0.0, 1e-12);
  const Eigen::VectorXd f2 =
      assemble_load(EnergyForm::second_derivative_1d(-1.0), one, basis, interval_quad(5));
  EXPECT_NEAR(f2(0), -kPi, 1e-12);
}

TEST(Constraints1D, EndpointRowsOnCosines) {
  const Basis1D basis = Basis1D::cosine(5, kPi);
  const Eigen::MatrixXd l =
      assemble_constraints(WeightSet::endpoints({{0.0, 0}, {kPi, 0}}), basis);
  ASSERT_EQ(l.rows(), 2);
  ASSERT_EQ(l.cols(), 5);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(l(0, i), 1.0);
    EXPECT_EQ(l(1, i), i % 2 == 0 ? 1.0 : -1.0);
  }
}

TEST(Constraints2D, CircleConstantWeightOnConstantMember) {
  const Basis2D basis = Basis2D::monomials(2);
  const Eigen::MatrixXd l = assemble_constraints(TraceKind::value, WeightSet::circle(1), basis,
                                                 circle_partition(1, 20));
  EXPECT_NEAR(l(0, 0), 2 * kPi, 1e-12);  // circumference
}

TEST(Constraints2D, SquareMeanWeightOnConstantMember) {
  const Basis2D basis = Basis2D::tensor(Basis1D::cosine(2, 1.0), Basis1D::cosine(2, 1.0));
  const Eigen::MatrixXd l = assemble_constraints(
      TraceKind::value, WeightSet::square_edge_cosines(2), basis, square_edges(10, 4));
  EXPECT_NEAR(l(0, 0), 1.0, 1e-12);  // (bottom, j=1) against member (1,1)
}

TEST(Constraints2D, RejectsMismatchedBoundary) {
  const Basis2D basis = Basis2D::monomials(2);
  EXPECT_THROW(assemble_constraints(TraceKind::value, WeightSet::circle(2), basis,
                                    circle_partition(3, 8)),
               std::invalid_argument);
  EXPECT_THROW(assemble_constraints(TraceKind::value, WeightSet::square_edge_cosines(2), basis,
                                    circle_partition(2, 8)),
               std::invalid_argument);
}

TEST(Mass, CosineOrthogonality1D) {
  const Basis1D basis = Basis1D::cosine(4, kPi);
  const Eigen::MatrixXd m = assemble_mass(basis, interval_quad(4));
  EXPECT_NEAR(m(0, 0), kPi, 1e-12);
  for (int n = 1; n < 4; ++n) EXPECT_NEAR(m(n, n), kPi / 2.0, 1e-12);
  EXPECT_NEAR(m(0, 1), 0.0, 1e-12);
}

TEST(Mass, TensorCosineDiagonal) {
  const Basis2D basis = Basis2D::tensor(Basis1D::cosine(3, 1.0), Basis1D::cosine(3, 1.0));
  const QuadratureRule1D axis = composite_gauss(10, 4, 0.0, 1.0);
  const Eigen::MatrixXd m = assemble_mass(basis, tensor_square(axis, axis));
  for (int i = 0; i < 9; ++i) {
    const int a = i / 3, b = i % 3;
    const double want = (a == 0 ? 1.0 : 0.5) * (b == 0 ? 1.0 : 0.5);
    EXPECT_NEAR(m(i, i), want, 1e-12);
    for (int j = 0; j < 9; ++j)
      if (i != j) EXPECT_NEAR(m(i, j), 0.0, 1e-12);
  }
}

TEST(Mass, MonomialGramMatrix) {
  const Basis2D basis = Basis2D::monomials(2);  // {1, y, x, xy}
  const QuadratureRule1D axis = composite_gauss(10, 4, 0.0, 1.0);
  const Eigen::MatrixXd m = assemble_mass(basis, tensor_square(axis, axis));
  Eigen::MatrixXd want(4, 4);
  want << 1.0, 1.0 / 2, 1.0 / 2, 1.0 / 4,
          1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 6,
          1.0 / 2, 1.0 / 4, 1.0 / 3, 1.0 / 6,
          1.0 / 4, 1.0 / 6, 1.0 / 6, 1.0 / 9;
  EXPECT_LE(max_abs(m - want), 1e-12);
}

TEST(BuildSystem, DimensionsMatchConfiguration) {
  const auto one1 = [](double) { return 1.0; };
  const ConstrainedSystem p1 =
      build_system(EnergyForm::dirichlet_gradient(), one1, Basis1D::cosine(5, kPi),
                   WeightSet::endpoints({{0.0, 0}, {kPi, 0}}), interval_quad(5));
  EXPECT_EQ(p1.K.rows(), 5);
  EXPECT_EQ(p1.L.rows(), 2);
  EXPECT_EQ(p1.f.size(), 5);

  const auto one2 = [](double, double) { return 1.0; };
  const ConstrainedSystem p4 =
      build_system(EnergyForm::dirichlet_gradient(), one2, Basis2D::monomials(5), TraceKind::value,
                   WeightSet::circle(4), polar_disk(32, 64), circle_partition(4, 20));
  EXPECT_EQ(p4.K.rows(), 25);
  EXPECT_EQ(p4.L.rows(), 8);
  EXPECT_EQ(p4.L.cols(), 25);

  const Basis1D axis = Basis1D::cosine(10, 1.0);
  const QuadratureRule1D q = composite_gauss(10, 10, 0.0, 1.0);
  const ConstrainedSystem p5 =
      build_system(EnergyForm::kirchhoff_plate(0.3), one2, Basis2D::tensor(axis, axis),
                   TraceKind::value, WeightSet::square_edge_cosines(5), tensor_square(q, q),
                   square_edges(10, 10));
  EXPECT_EQ(p5.L.rows(), 20);
  EXPECT_EQ(p5.L.cols(), 100);
}

TEST(BuildSystem, RejectsDegenerateConfiguration) {
  const auto one2 = [](double, double) { return 1.0; };
  // 2x2 monomials (4 trial functions) against 2s = 4 circle weights.
  EXPECT_THROW(build_system(EnergyForm::dirichlet_gradient(), one2, Basis2D::monomials(2),
                            TraceKind::value, WeightSet::circle(2), polar_disk(8, 16),
                            circle_partition(2, 8)),
               DegenerateConfigError);
}

TEST(Symmetry, AssembledBlocksAreSymmetric) {
  const auto one2 = [](double, double) { return 1.0; };
  const Basis1D axis = Basis1D::augmented_cosine(6, 1.0);
  const QuadratureRule1D q = composite_gauss(10, 6, 0.0, 1.0);
  const ConstrainedSystem sys =
      build_system(EnergyForm::kirchhoff_plate(0.3), one2, Basis2D::tensor(axis, axis),
                   TraceKind::value, WeightSet::square_edge_cosines(3), tensor_square(q, q),
                   square_edges(10, 6), /*with_mass=*/true);
  EXPECT_LE(max_abs(sys.K - sys.K.transpose()), 1e-12 * max_abs(sys.K));
  EXPECT_LE(max_abs(*sys.M - sys.M->transpose()), 1e-12 * max_abs(*sys.M));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*sys.M);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(QuadratureIndependence, DoublingOrdersLeavesBlocksFixed) {
  // Disk problem blocks at default and doubled orders.
  const Basis2D basis = Basis2D::monomials(5);
  const auto f = [](double x, double y) { return std::cos(std::hypot(x, y)); };
  const ConstrainedSystem coarse =
      build_system(EnergyForm::dirichlet_gradient(), f, basis, TraceKind::value,
                   WeightSet::circle(4), polar_disk(32, 64), circle_partition(4, 20), true);
  const ConstrainedSystem fine =
      build_system(EnergyForm::dirichlet_gradient(), f, basis, TraceKind::value,
                   WeightSet::circle(4), polar_disk(64, 128), circle_partition(4, 40), true);
  EXPECT_LE(max_abs(coarse.K - fine.K), 1e-10 * (1.0 + max_abs(fine.K)));
  EXPECT_LE((coarse.f - fine.f).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LE(max_abs(coarse.L - fine.L), 1e-10 * (1.0 + max_abs(fine.L)));
  EXPECT_LE(max_abs(*coarse.M - *fine.M), 1e-10 * (1.0 + max_abs(*fine.M)));

  // Interval bending blocks at default and doubled panel counts.
  const Basis1D b1 = Basis1D::augmented_cosine(9, kPi);
  const auto one = [](double) { return 1.0; };
  const WeightSet w = WeightSet::endpoints({{0.0, 0}, {kPi, 0}});
  const ConstrainedSystem c1 =
      build_system(EnergyForm::second_derivative_1d(), one, b1, w, composite_gauss(10, 9, 0.0, kPi));
  const ConstrainedSystem f1 =
      build_system(EnergyForm::second_derivative_1d(), one, b1, w, composite_gauss(10, 18, 0.0, kPi));
  EXPECT_LE(max_abs(c1.K - f1.K), 1e-10 * (1.0 + max_abs(f1.K)));
  EXPECT_LE((c1.f - f1.f).lpNorm<Eigen::Infinity>(), 1e-10);

  // Plate blocks with doubled interior panels and edge panels.
  const Basis1D axis = Basis1D::augmented_cosine(6, 1.0);
  const Basis2D plate = Basis2D::tensor(axis, axis);
  const WeightSet edges = WeightSet::square_edge_cosines(3);
  const auto unit = [](double, double) { return 1.0; };
  const auto plate_system = [&](int panels) {
    const QuadratureRule1D q = composite_gauss(10, panels, 0.0, 1.0);
    return build_system(EnergyForm::kirchhoff_plate(0.3), unit, plate, TraceKind::value, edges,
                        tensor_square(q, q), square_edges(10, panels), true);
  };
  const ConstrainedSystem cp = plate_system(6);
  const ConstrainedSystem fp = plate_system(12);
  EXPECT_LE(max_abs(cp.K - fp.K), 1e-10 * (1.0 + max_abs(fp.K)));
  EXPECT_LE(max_abs(cp.L - fp.L), 1e-10 * (1.0 + max_abs(fp.L)));
  EXPECT_LE(max_abs(*cp.M - *fp.M), 1e-10 * (1.0 + max_abs(*fp.M)));
}
