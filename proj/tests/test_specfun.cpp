#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "relqosc/specfun.hpp"

using namespace relqosc;

namespace {

// H_n from the explicit sum n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)
double hermite_sum(int n, double x) {
  double s = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    s += std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
  }
  return std::tgamma(n + 1.0) * s;
}

double pochhammer(double a, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

// 1F1(-n; b; x) from Pochhammer symbols
double kummer_sum(int n, double b, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += pochhammer(-n, k) / pochhammer(b, k) * std::pow(x, k) / std::tgamma(k + 1.0);
  return s;
}

double kummer_abs_sum(int n, double b, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += std::abs(pochhammer(-n, k) / pochhammer(b, k) * std::pow(x, k) / std::tgamma(k + 1.0));
  }
  return s;
}

// L_n^alpha(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!
double laguerre_sum(int n, double alpha, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double binom = std::tgamma(n + alpha + 1.0) / (std::tgamma(n - k + 1.0) * std::tgamma(alpha + k + 1.0));
    s += std::pow(-1.0, k) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
  }
  return s;
}

}  // namespace

TEST(Hermite, LowOrders) {
  EXPECT_DOUBLE_EQ(specfun::hermite(0, 0.7), 1.0);
  EXPECT_DOUBLE_EQ(specfun::hermite(1, 0.7), 1.4);
  EXPECT_DOUBLE_EQ(specfun::hermite(2, 0.5), -1.0);
  EXPECT_DOUBLE_EQ(specfun::hermite(3, 1.0), -4.0);
  EXPECT_DOUBLE_EQ(specfun::hermite(2, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(specfun::hermite(3, 0.5), -5.0);
}

TEST(Hermite, MatchesExplicitSum) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 13;
    const double x = xs(rng);
    const double ref = hermite_sum(n, x);
    EXPECT_NEAR(specfun::hermite(n, x), ref, 1e-10 * std::max(1.0, std::abs(ref))) << "n=" << n << " x=" << x;
  }
}

TEST(Hermite, ExactParity) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> xs(0.0, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 10;
    const double x = xs(rng);
    const double sign = n % 2 ? -1.0 : 1.0;
    EXPECT_EQ(specfun::hermite(n, -x), sign * specfun::hermite(n, x));
  }
}

TEST(Kummer, FrozenValues) {
  EXPECT_DOUBLE_EQ(specfun::kummer_terminating(0, 2.5, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(specfun::kummer_terminating(0, 1.5, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(specfun::kummer_terminating(1, 2.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(specfun::kummer_terminating(1, 2.0, 3.0), -0.5);
  EXPECT_NEAR(specfun::kummer_terminating(2, 1.0, 1.0), -0.5, 1e-15);
}

TEST(Kummer, MatchesPochhammerSum) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> bs(0.1, 6.0);
  std::uniform_real_distribution<double> xs(0.0, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 9;
    const double b = bs(rng);
    const double x = xs(rng);
    EXPECT_NEAR(specfun::kummer_terminating(n, b, x), kummer_sum(n, b, x), 1e-12 * kummer_abs_sum(n, b, x));
  }
}

TEST(Kummer, RejectsNonPositiveB) {
  EXPECT_THROW(specfun::kummer_terminating(2, 0.0, 1.0), domain_error);
  EXPECT_THROW(specfun::kummer_terminating(2, -1.5, 1.0), domain_error);
}

TEST(Laguerre, FrozenValues) {
  EXPECT_DOUBLE_EQ(specfun::laguerre(0, 0.3, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(specfun::laguerre(1, 0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(specfun::laguerre(1, 0.0, 2.0), -1.0);
  EXPECT_NEAR(specfun::laguerre(2, 1.0, 1.0), 0.5, 1e-15);
}

TEST(Laguerre, MatchesExplicitSum) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> as(-0.9, 5.0);
  std::uniform_real_distribution<double> xs(0.0, 8.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 9;
    const double alpha = as(rng);
    const double x = xs(rng);
    const double ref = laguerre_sum(n, alpha, x);
    EXPECT_NEAR(specfun::laguerre(n, alpha, x), ref, 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Laguerre, RejectsAlphaAtOrBelowMinusOne) {
  EXPECT_THROW(specfun::laguerre(1, -1.0, 0.5), domain_error);
}

// L_n^alpha(x) = C(n+alpha, n) 1F1(-n; alpha+1; x)
TEST(KummerLaguerre, IdentityHolds) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> as(-0.5, 4.0);
  std::uniform_real_distribution<double> xs(0.0, 12.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 10;
    const double alpha = as(rng);
    const double x = xs(rng);
    const double lhs = specfun::kummer_terminating(n, alpha + 1.0, x);
    const double rhs = specfun::kummer_laguerre_ratio(n, alpha) * specfun::laguerre(n, alpha, x);
    EXPECT_NEAR(lhs, rhs, 1e-11 * kummer_abs_sum(n, alpha + 1.0, x)) << "n=" << n << " alpha=" << alpha;
  }
}

TEST(LogFactorial, SmallValues) {
  EXPECT_DOUBLE_EQ(specfun::log_factorial(0), 0.0);
  EXPECT_NEAR(specfun::log_factorial(5), std::log(120.0), 1e-14);
}
