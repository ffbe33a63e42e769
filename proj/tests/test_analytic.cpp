#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "relqosc/analytic.hpp"
#include "relqosc/tridiagonal.hpp"

using namespace relqosc;

namespace {

ModelSpec make(Family f, double m, double c, double k, double b = 0.0, std::optional<int> ml = std::nullopt) {
  ModelSpec s;
  s.family = f;
  s.params = PhysicalParams{m, c, k, k, b};
  s.ml = ml;
  return s;
}

std::vector<ModelSpec> samples() {
  return {
      make(Family::dirac_1d_harmonic, 1.0, 1.0, 1.0),
      make(Family::dirac_1d_harmonic, 1.5, 0.8, 0.7),
      make(Family::dirac_1d_isotonic, 1.0, 1.0, 1.0, 1.0),
      make(Family::dirac_1d_isotonic, 0.9, 1.4, 1.3, 0.35),
      make(Family::dirac_2d_harmonic, 1.0, 1.0, 1.0, 0.0, 1),
      make(Family::dirac_2d_harmonic, 1.2, 1.1, 0.6, 0.0, -3),
      make(Family::dirac_2d_isotonic, 1.0, 1.0, 1.0, 0.25, 1),
      make(Family::dirac_2d_isotonic, 0.7, 1.3, 1.6, 0.6, -1),
  };
}

// Trapezoid quadrature on [lo, hi].
template <class F>
double integrate(F&& f, double lo, double hi, int n = 20000) {
  const double h = (hi - lo) / n;
  double s = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < n; ++i) s += f(lo + i * h);
  return s * h;
}

}  // namespace

TEST(AnalyticE2, FrozenValues) {
  EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_1d_harmonic, 1, 1, 1), 2), 5.0);
  EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_1d_isotonic, 1, 1, 1, 1.0), 0), 7.0);
  EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_2d_harmonic, 1, 1, 1, 0, -2), 1), 13.0);
  EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_2d_harmonic, 1, 1, 1, 0, 3), 1), 5.0);
  EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_2d_isotonic, 1, 1, 1, 0.25, 1), 0), 1.0);
}

TEST(AnalyticE2, NeverBelowRestEnergy) {
  for (const auto& s : samples()) {
    const double mc2 = s.rest_energy();
    for (int n = 0; n < 10; ++n) EXPECT_GE(analytic_E2(s, n), mc2 * mc2 * (1.0 - 1e-15));
  }
}

TEST(AnalyticE2, EquallySpacedInN) {
  for (const auto& s : samples()) {
    const double gap = analytic_E2(s, 1) - analytic_E2(s, 0);
    for (int n = 1; n < 12; ++n) {
      EXPECT_NEAR(analytic_E2(s, n + 1) - analytic_E2(s, n), gap, 1e-12 * analytic_E2(s, n + 1));
    }
  }
}

TEST(AnalyticE2, PositiveMlDegenerate) {
  for (int ml = 1; ml <= 6; ++ml) {
    EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_2d_harmonic, 1.3, 0.9, 0.8, 0, ml), 2),
                     analytic_E2(make(Family::dirac_2d_harmonic, 1.3, 0.9, 0.8, 0, 1), 2));
  }
}

TEST(AnalyticE2, IsotonicPlanarReducesToHarmonic) {
  for (int ml : {-2, -1, 1, 2}) {
    for (int n = 0; n < 5; ++n) {
      EXPECT_DOUBLE_EQ(analytic_E2(make(Family::dirac_2d_isotonic, 1.1, 1.2, 0.9 * 1.1, 0.0, ml), n),
                       analytic_E2(make(Family::dirac_2d_harmonic, 1.1, 1.2, 0.9, 0.0, ml), n));
    }
  }
}

TEST(AnalyticE2, RejectsNegativeLevel) {
  EXPECT_THROW(analytic_E2(make(Family::dirac_1d_harmonic, 1, 1, 1), -1), config_error);
  EXPECT_THROW(build_spectrum_table(make(Family::dirac_1d_harmonic, 1, 1, 1), 0), config_error);
}

TEST(IsotonicNu, EqualsBPlusOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> bs(1e-6, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double b = bs(rng);
    EXPECT_NEAR(isotonic_nu(b), b + 1.0, 1e-12 * (b + 1.0));
  }
}

TEST(NonrelEps, FrozenValues) {
  EXPECT_DOUBLE_EQ(analytic_nonrel_eps(make(Family::dirac_1d_harmonic, 1, 1, 1), 3), 3.0);
  EXPECT_DOUBLE_EQ(analytic_nonrel_eps(make(Family::dirac_2d_isotonic, 1, 1, 1, 0.25, 1), 0), 0.0);
  // radial n=1 in sector m_l=-2 is the N = 2n + |m_l| = 4 shell: omega (N - m_l)
  EXPECT_DOUBLE_EQ(analytic_nonrel_eps(make(Family::dirac_2d_harmonic, 1, 1, 1, 0, -2), 1), 6.0);
}

TEST(NonrelEps, MatchesSchrodingerLimit) {
  for (const auto& s : samples()) {
    for (int n = 0; n < 6; ++n) {
      const double ref = schrodinger_limit_eps(s, n);
      EXPECT_NEAR(analytic_nonrel_eps(s, n), ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

// Applying -d^2 + V by finite differences to the closed-form profile must
// return lambda_n psi with lambda_n read off the E^2 map.
TEST(Wavefunction, SolvesReducedEquation) {
  std::mt19937_64 rng(5);
  for (const auto& s : samples()) {
    const auto prob = effective_problem(s);
    const double scale = 1.0 / std::sqrt(s.linear_strength());
    std::uniform_real_distribution<double> xs(0.4 * scale, 2.5 * scale);
    for (int n = 0; n < 4; ++n) {
      const double lambda = prob.lambda_to_E2.inverse(analytic_E2(s, n));
      for (int trial = 0; trial < 20; ++trial) {
        const double x = xs(rng);
        const double h = 1e-4 * scale;
        auto psi = [&](double y) { return analytic_wavefunction(s, n, y); };
        const double d2 = (psi(x + h) - 2.0 * psi(x) + psi(x - h)) / (h * h);
        const double lhs = -d2 + prob.potential(x) * psi(x);
        const double mag = std::abs(d2) + std::abs(prob.potential(x) * psi(x)) + 1e-300;
        EXPECT_NEAR(lhs, lambda * psi(x), 1e-5 * mag) << family_name(s.family) << " n=" << n << " x=" << x;
      }
    }
  }
}

TEST(Wavefunction, Orthogonal) {
  for (const auto& s : samples()) {
    const double scale = 1.0 / std::sqrt(s.linear_strength());
    const double lo = s.family == Family::dirac_1d_harmonic ? -12.0 * scale : 0.0;
    const double hi = 12.0 * scale;
    for (int i = 0; i < 4; ++i) {
      const double nii = integrate([&](double x) { return std::pow(analytic_wavefunction(s, i, x), 2); }, lo, hi);
      for (int j = i + 1; j < 4; ++j) {
        const double njj = integrate([&](double x) { return std::pow(analytic_wavefunction(s, j, x), 2); }, lo, hi);
        const double nij = integrate(
            [&](double x) { return analytic_wavefunction(s, i, x) * analytic_wavefunction(s, j, x); }, lo, hi);
        EXPECT_LT(std::abs(nij) / std::sqrt(nii * njj), 1e-6) << family_name(s.family) << " " << i << "," << j;
      }
    }
  }
}

TEST(Wavefunction, NodeCountEqualsLevel) {
  for (const auto& s : samples()) {
    const double scale = 1.0 / std::sqrt(s.linear_strength());
    const double lo = s.family == Family::dirac_1d_harmonic ? -8.0 * scale : 0.0;
    for (int n = 0; n < 6; ++n) {
      std::vector<double> v;
      for (int i = 1; i < 4000; ++i) v.push_back(analytic_wavefunction(s, n, lo + (8.0 * scale - lo) * i / 4000.0));
      EXPECT_EQ(count_sign_changes(v), n) << family_name(s.family) << " n=" << n;
    }
  }
}

TEST(Wavefunction, HarmonicParity) {
  const auto s = make(Family::dirac_1d_harmonic, 1.0, 1.0, 1.3);
  for (int n = 0; n < 6; ++n) {
    for (double x : {0.3, 1.1, 2.7}) {
      EXPECT_EQ(analytic_wavefunction(s, n, -x), (n % 2 ? -1.0 : 1.0) * analytic_wavefunction(s, n, x));
    }
  }
}

TEST(Wavefunction, HalfLineBoundary) {
  const auto s = make(Family::dirac_1d_isotonic, 1.0, 1.0, 1.0, 1.0);
  EXPECT_EQ(analytic_wavefunction(s, 2, 0.0), 0.0);
  EXPECT_THROW(analytic_wavefunction(s, 0, -0.1), domain_error);
}

TEST(SpectrumTable, LevelsConsistent) {
  for (const auto& s : samples()) {
    const auto t = build_spectrum_table(s, 5);
    ASSERT_EQ(t.levels.size(), 5u);
    for (const auto& l : t.levels) {
      EXPECT_DOUBLE_EQ(l.E * l.E, l.E2);
      EXPECT_GT(l.E, 0.0);
    }
  }
}
