#include "ritzlag/reference.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ritzlag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

// Ci(1) = gamma + sum_{k>=1} (-1)^k / (2k (2k)!) from the entire part of the
// cosine integral.
double cosine_integral_at_one() {
  double sum = 0.0;
  double factorial = 1.0;  // (2k)!
  for (int k = 1; k <= 12; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    const double term = (k % 2 == 0 ? 1.0 : -1.0) / (2.0 * k * factorial);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return kEulerGamma + sum;
}

// Grid container for the FD plate solves, with bilinear interpolation.
struct PlateGrid {
  int n = 0;
  double h = 0.0;
  Eigen::MatrixXd values;  // (n x n), boundary included

  double interpolate(double x, double y) const {
    const double gx = std::clamp(x, 0.0, 1.0) / h;
    const double gy = std::clamp(y, 0.0, 1.0) / h;
    const int i0 = std::min(static_cast<int>(gx), n - 2);
    const int j0 = std::min(static_cast<int>(gy), n - 2);
    const double tx = gx - i0;
    const double ty = gy - j0;
    return (1 - tx) * (1 - ty) * values(i0, j0) + tx * (1 - ty) * values(i0 + 1, j0) +
           (1 - tx) * ty * values(i0, j0 + 1) + tx * ty * values(i0 + 1, j0 + 1);
  }
};

// 13-point biharmonic solve of grad^4 u = 1 on the unit square with u = 0 on
// the boundary; ghost nodes reflect symmetrically for the clamped plate
// (u_n = 0) and antisymmetrically for the simply supported one (u_nn = 0).
PlateGrid solve_plate_grid(int n, PlateBC bc) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("fd plate solve: nodes per side must be odd and >= 5");
  const int m = n - 2;  // interior nodes per side
  const double h = 1.0 / (n - 1);
  const double ghost_sign = bc == PlateBC::clamped ? 1.0 : -1.0;
  const auto id = [m](int i, int j) { return (i - 1) * m + (j - 1); };

  struct Arm {
    int di, dj;
    double c;
  };
  static const Arm arms[] = {{0, 0, 20.0},  {1, 0, -8.0},  {-1, 0, -8.0}, {0, 1, -8.0},
                             {0, -1, -8.0}, {1, 1, 2.0},   {1, -1, 2.0},  {-1, 1, 2.0},
                             {-1, -1, 2.0}, {2, 0, 1.0},   {-2, 0, 1.0},  {0, 2, 1.0},
                             {0, -2, 1.0}};

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(m) * m * 13);
  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(m * m, h * h * h * h);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int row = id(i, j);
      for (const Arm& a : arms) {
        int ii = i + a.di;
        int jj = j + a.dj;
        double c = a.c;
        if (ii < 0) {
          ii = -ii;
          c *= ghost_sign;
        } else if (ii > n - 1) {
          ii = 2 * (n - 1) - ii;
          c *= ghost_sign;
        }
        if (jj < 0) {
          jj = -jj;
          c *= ghost_sign;
        } else if (jj > n - 1) {
          jj = 2 * (n - 1) - jj;
          c *= ghost_sign;
        }
        if (ii == 0 || ii == n - 1 || jj == 0 || jj == n - 1) continue;  // u = 0 there
        triplets.emplace_back(row, id(ii, jj), c);
      }
    }
  }
  Eigen::SparseMatrix<double> a(m * m, m * m);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("fd plate solve: sparse factorization failed");
  const Eigen::VectorXd u = lu.solve(rhs);

  PlateGrid grid;
  grid.n = n;
  grid.h = h;
  grid.values = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) grid.values(i, j) = u(id(i, j));
  return grid;
}

const PlateGrid& cached_plate_grid(int n, PlateBC bc) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PlateGrid>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, static_cast<int>(bc)}];
  if (!slot) slot = std::make_unique<PlateGrid>(solve_plate_grid(n, bc));
  return *slot;
}

}  // namespace

const char* to_string(ProblemId id) {
  switch (id) {
    case ProblemId::P1: return "P1";
    case ProblemId::P2: return "P2";
    case ProblemId::P3: return "P3";
    case ProblemId::P4: return "P4";
    case ProblemId::P5: return "P5";
    case ProblemId::P6: return "P6";
  }
  return "?";
}

ProblemId problem_from_string(const std::string& name) {
  for (ProblemId id : {ProblemId::P1, ProblemId::P2, ProblemId::P3, ProblemId::P4, ProblemId::P5,
                       ProblemId::P6})
    if (name == to_string(id)) return id;
  throw std::invalid_argument("unknown problem id: " + name);
}

ReferenceSolution exact_1d(ProblemId id) {
  std::function<double(double)> eval;
  std::string note;
  switch (id) {
    case ProblemId::P1:
      eval = [](double x) { return 0.5 * x * x - 0.5 * kPi * x; };
      note = "u = x^2/2 - pi x/2";
      break;
    case ProblemId::P2:
      eval = [](double x) {
        return x * x * x * x / 24.0 - kPi * x * x * x / 12.0 + kPi * kPi * kPi * x / 24.0;
      };
      note = "u = x^4/24 - pi x^3/12 + pi^3 x/24";
      break;
    case ProblemId::P3:
      eval = [](double x) {
        return x * x * x * x / 24.0 - kPi * x * x * x / 12.0 + kPi * kPi * x * x / 24.0;
      };
      note = "u = x^4/24 - pi x^3/12 + pi^2 x^2/24";
      break;
    default:
      throw std::invalid_argument("exact_1d: only P1..P3 have 1D closed forms");
  }
  return {ReferenceKind::closed_form, std::move(eval), nullptr, 0.0, std::move(note)};
}

ReferenceSolution exact_disk() {
  const double ci1 = cosine_integral_at_one();
  const double offset = kEulerGamma + std::cos(1.0) - ci1;
  // u(r) = offset - cos r + sum_{i>=1} (-1)^i r^(2i) / (2i (2i)!), the
  // radial antiderivative of (cos t - 1)/t plus sin t. The printed source
  // has 2^i in place of 2i; the radial ODE oracle pins the 2i form.
  const auto radial = [offset](double r) {
    double sum = 0.0;
    double factorial = 1.0;
    double rpow = 1.0;
    const double r2 = r * r;
    for (int i = 1; i <= 16; ++i) {
      factorial *= (2.0 * i - 1.0) * (2.0 * i);
      rpow *= r2;
      const double term = (i % 2 == 0 ? 1.0 : -1.0) * rpow / (2.0 * i * factorial);
      sum += term;
      if (std::abs(term) < 1e-16) break;
    }
    return offset - std::cos(r) + sum;
  };
  auto eval2 = [radial](double x, double y) { return radial(std::hypot(x, y)); };
  auto eval1 = [radial](double r) { return radial(r); };
  return {ReferenceKind::series, std::move(eval1), std::move(eval2), 1e-14,
          "membrane series via Euler-Mascheroni constant and Ci(1)"};
}

ReferenceSolution fd_radial_disk(int grid_points) {
  if (grid_points < 10) throw std::invalid_argument("fd_radial_disk: grid too small");
  const int n = grid_points;
  const double h = 1.0 / (n - 1);
  // Unknowns u_0..u_{n-2}; u_{n-1} = 0. Node 0 uses the symmetric limit
  // 2 u''(0) = f(0) with the even reflection u_{-1} = u_1.
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs(n - 1);
  triplets.emplace_back(0, 0, -4.0 / (h * h));
  triplets.emplace_back(0, 1, 4.0 / (h * h));
  rhs(0) = std::cos(0.0);
  for (int k = 1; k <= n - 2; ++k) {
    const double r = k * h;
    const double lower = 1.0 / (h * h) - 1.0 / (2.0 * h * r);
    const double diag = -2.0 / (h * h);
    const double upper = 1.0 / (h * h) + 1.0 / (2.0 * h * r);
    triplets.emplace_back(k, k - 1, lower);
    triplets.emplace_back(k, k, diag);
    if (k + 1 <= n - 2) triplets.emplace_back(k, k + 1, upper);
    rhs(k) = std::cos(r);
  }
  Eigen::SparseMatrix<double> a(n - 1, n - 1);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("fd_radial_disk: sparse factorization failed");
  const Eigen::VectorXd interior = lu.solve(rhs);

  auto values = std::make_shared<std::vector<double>>(n, 0.0);
  for (int k = 0; k < n - 1; ++k) (*values)[k] = interior(k);

  auto radial = [values, h, n](double r) {
    const double g = std::clamp(r, 0.0, 1.0) / h;
    const int k = std::min(static_cast<int>(g), n - 2);
    const double t = g - k;
    return (1.0 - t) * (*values)[k] + t * (*values)[k + 1];
  };
  auto eval2 = [radial](double x, double y) { return radial(std::hypot(x, y)); };
  return {ReferenceKind::fd_oracle, radial, std::move(eval2), h * h,
          "radial FD oracle, " + std::to_string(grid_points) + " points"};
}

ReferenceSolution navier_ss_plate(double load) {
  // Tail bound for truncation at odd M: see the per-m bound below; M = 399
  // puts it under 1e-12 with margin.
  constexpr int max_index = 399;
  const double scale = 16.0 * load / std::pow(kPi, 6);
  double tail = 0.0;
  for (int m = max_index + 2; m <= 20000; m += 2)
    tail += (0.5 * std::log(static_cast<double>(m)) + 1.25) / std::pow(static_cast<double>(m), 5);
  tail *= 2.0 * scale;

  constexpr int modes = (max_index + 1) / 2;
  auto inv_denom = std::make_shared<std::vector<double>>();
  inv_denom->reserve(static_cast<std::size_t>(modes) * modes);
  for (int m = 1; m <= max_index; m += 2)
    for (int n = 1; n <= max_index; n += 2) {
      const double mn = static_cast<double>(m) * m + static_cast<double>(n) * n;
      inv_denom->push_back(1.0 / (static_cast<double>(m) * n * mn * mn));
    }

  auto eval2 = [scale, inv_denom](double x, double y) {
    // Metric grids revisit the same coordinates; keep per-thread sine tables.
    thread_local std::map<double, std::vector<double>> table_cache;
    const auto sines = [](double t) -> const std::vector<double>& {
      if (table_cache.size() > 512) table_cache.clear();
      auto [it, fresh] = table_cache.try_emplace(t);
      if (fresh) {
        it->second.reserve(modes);
        for (int m = 1; m <= max_index; m += 2) it->second.push_back(std::sin(m * kPi * t));
      }
      return it->second;
    };
    const std::vector<double> sx = sines(x);
    const std::vector<double>& sy = sines(y);
    double sum = 0.0;
    const double* d = inv_denom->data();
    for (int mi = 0; mi < modes; ++mi) {
      double row = 0.0;
      for (int ni = 0; ni < modes; ++ni) row += sy[ni] * d[ni];
      sum += sx[mi] * row;
      d += modes;
    }
    return scale * sum;
  };
  return {ReferenceKind::series, nullptr, std::move(eval2), tail,
          "double-sine series for the SS plate, odd indices <= 399"};
}

ReferenceSolution fd_biharmonic_plate(int nodes_per_side, PlateBC bc) {
  if (nodes_per_side < 65 || nodes_per_side % 2 == 0)
    throw std::invalid_argument("fd_biharmonic_plate: nodes per side must be odd and >= 65");
  const int n_coarse = nodes_per_side;
  const int n_fine = 2 * nodes_per_side - 1;
  const PlateGrid& coarse = cached_plate_grid(n_coarse, bc);
  const PlateGrid& fine = cached_plate_grid(n_fine, bc);

  const int cc = (n_coarse - 1) / 2;
  const int cf = (n_fine - 1) / 2;
  const double estimate = std::abs(fine.values(cf, cf) - coarse.values(cc, cc)) / 3.0;

  auto eval2 = [&coarse, &fine](double x, double y) {
    return (4.0 * fine.interpolate(x, y) - coarse.interpolate(x, y)) / 3.0;
  };
  const std::string note = std::string("13-point biharmonic FD, Richardson ") +
                           std::to_string(n_coarse) + "/" + std::to_string(n_fine) +
                           (bc == PlateBC::clamped ? ", clamped" : ", simply supported");
  return {ReferenceKind::fd_oracle, nullptr, std::move(eval2), estimate, note};
}

double exact_ss_plate_omega(int m, int n) {
  return kPi * kPi * static_cast<double>(m * m + n * n);
}

namespace detail {
double fd_plate_center(int nodes_per_side, PlateBC bc) {
  const PlateGrid grid = solve_plate_grid(nodes_per_side, bc);
  const int c = (nodes_per_side - 1) / 2;
  return grid.values(c, c);
}
}  // namespace detail

}  // namespace ritzlag
