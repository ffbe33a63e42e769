#pragma once

// Closed-form spectra and (unnormalized) wavefunctions of the four families.

#include <cmath>
#include <string>
#include <vector>

#include "relqosc/error.hpp"
#include "relqosc/models.hpp"
#include "relqosc/specfun.hpp"

namespace relqosc {

/// One bound level. E is always the particle branch +sqrt(E2).
struct Level {
  int n = 0;
  double E2 = 0.0;
  double E = 0.0;
  double eps = 0.0;
};

enum class Source { analytic, numeric };

struct SpectrumTable {
  ModelSpec spec;
  std::vector<Level> levels;
  Source source = Source::analytic;
};

namespace detail {
inline void check_level(int n) {
  if (n < 0) throw config_error("level index must be non-negative, got " + std::to_string(n));
}
}  // namespace detail

/// nu = (sqrt(1 + 4b(b+1)) + 1) / 2, the small-x exponent of the line
/// isotonic wavefunction. Equals b + 1 for b > 0.
inline double isotonic_nu(double b) { return 0.5 * (std::sqrt(1.0 + 4.0 * b * (b + 1.0)) + 1.0); }

/// Closed-form E_n^2.
inline double analytic_E2(const ModelSpec& spec, int n) {
  spec.validate();
  detail::check_level(n);
  const auto& p = spec.params;
  const double mc2 = spec.rest_energy();
  const double rest2 = mc2 * mc2;
  switch (spec.family) {
    case Family::dirac_1d_harmonic:
      return rest2 * (1.0 + 2.0 * n * p.omega / mc2);
    case Family::dirac_1d_isotonic: {
      const double bracket = 4.0 * n + 2.0 * p.b + 1.0 + std::sqrt(1.0 + 4.0 * p.b * (p.b + 1.0));
      return rest2 * (1.0 + p.a / (p.m * p.m * p.c * p.c) * bracket);
    }
    case Family::dirac_2d_harmonic: {
      const int ml = *spec.ml;
      return rest2 * (1.0 + 2.0 * p.omega / mc2 * (2.0 * n + std::abs(ml) - ml));
    }
    case Family::dirac_2d_isotonic: {
      const double s = spec.effective_ml();
      return rest2 * (1.0 + 2.0 * p.a / (p.m * p.m * p.c * p.c) * (2.0 * n + std::abs(s) - s));
    }
  }
  return 0.0;
}

/// Non-relativistic energy (E_n^2 - (mc^2)^2) / (2 m c^2).
inline double analytic_nonrel_eps(const ModelSpec& spec, int n) {
  const double mc2 = spec.rest_energy();
  return (analytic_E2(spec, n) - mc2 * mc2) / (2.0 * mc2);
}

/// Energy of the n-th level of the non-relativistic Schrodinger operator the
/// model reduces to as c -> infinity, computed from the isotonic-oscillator
/// eigenvalues (k/m)(2n + s + 1) of -(1/2m) d^2 + k^2 x^2/(2m) + (s^2 - 1/4)/(2m x^2)
/// plus each family's constant shift. Independent of analytic_E2.
inline double schrodinger_limit_eps(const ModelSpec& spec, int n) {
  spec.validate();
  detail::check_level(n);
  const double m = spec.params.m;
  const double k = spec.linear_strength();
  switch (spec.family) {
    case Family::dirac_1d_harmonic:
      // harmonic oscillator with the -omega/2 shift
      return spec.params.omega * (n + 0.5) - 0.5 * spec.params.omega;
    case Family::dirac_1d_isotonic: {
      const double b = spec.params.b;
      // b(b+1)/x^2 corresponds to s = b + 1/2
      return k / m * (2.0 * n + (b + 0.5) + 1.0) + k * (2.0 * b - 1.0) / (2.0 * m);
    }
    case Family::dirac_2d_harmonic: {
      const int ml = *spec.ml;
      return spec.params.omega * (2.0 * n + std::abs(ml) + 1.0) - spec.params.omega * ml -
             spec.params.omega;
    }
    case Family::dirac_2d_isotonic: {
      const int ml = *spec.ml;
      const double s = std::abs(spec.effective_ml());
      return k / m * (2.0 * n + s + 1.0) - k * ml / m + k * (spec.params.b - 1.0) / m;
    }
  }
  return 0.0;
}

/// Unnormalized line profile (line families) or chi-form radial profile
/// chi_n(r) (planar families; phi = chi / sqrt(r)).
inline double analytic_wavefunction(const ModelSpec& spec, int n, double x) {
  spec.validate();
  detail::check_level(n);
  const auto& p = spec.params;
  if (spec.family == Family::dirac_1d_harmonic) {
    const double mw = p.m * p.omega;
    return std::exp(-0.5 * mw * x * x) * specfun::hermite(n, std::sqrt(mw) * x);
  }
  if (x < 0.0) throw domain_error("wavefunction argument must be >= 0 on the half-line");
  const double k = spec.linear_strength();
  double power = 0.0;
  double kummer_b = 0.0;
  if (spec.family == Family::dirac_1d_isotonic) {
    const double nu = isotonic_nu(p.b);
    power = nu;
    kummer_b = nu + 0.5;
  } else {
    const double s = std::abs(spec.effective_ml());
    power = s + 0.5;
    kummer_b = s + 1.0;
  }
  if (x == 0.0) return 0.0;
  const double y = k * x * x;
  return std::pow(x, power) * std::exp(-0.5 * y) * specfun::kummer_terminating(n, kummer_b, y);
}

inline SpectrumTable build_spectrum_table(const ModelSpec& spec, int k) {
  if (k < 1) throw config_error("number of levels must be >= 1, got " + std::to_string(k));
  SpectrumTable table{spec, {}, Source::analytic};
  table.levels.reserve(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) {
    const double e2 = analytic_E2(spec, n);
    table.levels.push_back(Level{n, e2, std::sqrt(e2), analytic_nonrel_eps(spec, n)});
  }
  return table;
}

}  // namespace relqosc
