#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "relqosc/tridiagonal.hpp"

using namespace relqosc;

namespace {

TridiagonalOperator random_tridiagonal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  TridiagonalOperator t;
  for (int i = 0; i < n; ++i) t.diag.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) t.offdiag.push_back(u(rng));
  return t;
}

Eigen::MatrixXd dense(const TridiagonalOperator& t) {
  const int n = t.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
  }
  return m;
}

}  // namespace

TEST(Tridiagonal, ThreeByThree) {
  const TridiagonalOperator t{{2, 2, 2}, {-1, -1}};
  const auto r = eigen_lowest(t, 3);
  EXPECT_NEAR(r[0].lambda, 2.0 - std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(r[1].lambda, 2.0, 1e-13);
  EXPECT_NEAR(r[2].lambda, 2.0 + std::sqrt(2.0), 1e-13);
  EXPECT_EQ(r[0].nodes, 0);
  EXPECT_EQ(r[2].nodes, 2);
}

TEST(Tridiagonal, MatchesDenseSolver) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial * 3;
    const auto t = random_tridiagonal(rng, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(t));
    const int k = std::min(n, 8);
    const auto r = eigen_lowest(t, k);
    const double scale = t.inf_norm();
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(r[static_cast<std::size_t>(i)].lambda, es.eigenvalues()(i), 1e-11 * scale) << "n=" << n;
      Eigen::Map<const Eigen::VectorXd> v(r[static_cast<std::size_t>(i)].vector.data(), n);
      EXPECT_NEAR(std::abs(v.dot(es.eigenvectors().col(i))), 1.0, 1e-8) << "n=" << n << " i=" << i;
      EXPECT_LT(r[static_cast<std::size_t>(i)].residual, 1e-9 * scale);
    }
  }
}

TEST(Tridiagonal, SturmCountMatchesDense) {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> xs(-12.0, 12.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_tridiagonal(rng, 20);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(t), Eigen::EigenvaluesOnly);
    const double x = xs(rng);
    int below = 0;
    for (int i = 0; i < 20; ++i) below += es.eigenvalues()(i) < x;
    EXPECT_EQ(sturm_count(t, x), below);
  }
}

// -d^2/dx^2 on (0, pi) with Dirichlet ends: lambda_k = (4/h^2) sin^2(k h / 2).
TEST(Tridiagonal, ParticleInABox) {
  const int n = 2000;
  const double h = std::numbers::pi / (n + 1);
  TridiagonalOperator t{std::vector<double>(n, 2.0 / (h * h)), std::vector<double>(n - 1, -1.0 / (h * h))};
  EigenOptions opt;
  opt.weight = h;
  const auto r = eigen_lowest(t, 6, opt);
  for (int k = 1; k <= 6; ++k) {
    const double exact = 4.0 / (h * h) * std::pow(std::sin(k * h / 2.0), 2);
    const auto& s = r[static_cast<std::size_t>(k - 1)];
    EXPECT_NEAR(s.lambda, exact, 1e-9 * exact);
    EXPECT_NEAR(s.lambda, k * k, 1e-5 * k * k);
    EXPECT_EQ(s.nodes, k - 1);
    double norm = 0.0;
    for (double v : s.vector) norm += v * v;
    EXPECT_NEAR(norm * h, 1.0, 1e-12);
    // sin(kx) is positive on its first lobe
    EXPECT_GT(s.vector[static_cast<std::size_t>(n / (4 * k))], 0.0);
  }
}

TEST(Tridiagonal, DegenerateBlocksGiveOrthogonalVectors) {
  TridiagonalOperator t{{2, 2, 2, 2, 2, 2}, {-1, -1, 0, -1, -1}};
  const auto r = eigen_lowest(t, 2);
  EXPECT_NEAR(r[0].lambda, r[1].lambda, 1e-12);
  double d = 0.0;
  for (std::size_t i = 0; i < 6; ++i) d += r[0].vector[i] * r[1].vector[i];
  EXPECT_NEAR(d, 0.0, 1e-10);
  EXPECT_LT(r[1].residual, 1e-10);
}

TEST(Tridiagonal, RejectsBadInput) {
  const TridiagonalOperator t{{1, 2, 3}, {1, 1}};
  EXPECT_THROW(eigen_lowest(t, 0), config_error);
  EXPECT_THROW(eigen_lowest(t, 4), config_error);
  EXPECT_THROW(eigen_lowest(TridiagonalOperator{{1, 2}, {1, 1}}, 1), config_error);
  EXPECT_THROW(eigen_lowest(TridiagonalOperator{{1, NAN, 3}, {1, 1}}, 1), solver_error);
}

TEST(Tridiagonal, Deterministic) {
  std::mt19937_64 rng(303);
  const auto t = random_tridiagonal(rng, 50);
  const auto a = eigen_lowest(t, 5);
  const auto b = eigen_lowest(t, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    EXPECT_EQ(a[i].vector, b[i].vector);
  }
}

TEST(SignHelpers, CountAndFix) {
  std::vector<double> v{0.0, -1.0, -2.0, -1.0, 1e-12, 1.0, 2.0};
  EXPECT_EQ(count_sign_changes(v), 1);
  fix_sign(v);
  EXPECT_GT(v[2], 0.0);
}
