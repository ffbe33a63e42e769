#pragma once

// The four oscillator families, their superpotentials, and the reduction of
// each Dirac problem to a single second-order Sturm-Liouville problem whose
// eigenvalue lambda maps affinely onto E^2.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relqosc/error.hpp"
#include "relqosc/grid.hpp"

namespace relqosc {

enum class Family {
  dirac_1d_harmonic,
  dirac_1d_isotonic,
  dirac_2d_harmonic,
  dirac_2d_isotonic,
};

inline constexpr Family kAllFamilies[] = {Family::dirac_1d_harmonic, Family::dirac_1d_isotonic,
                                          Family::dirac_2d_harmonic, Family::dirac_2d_isotonic};

inline bool is_planar(Family f) {
  return f == Family::dirac_2d_harmonic || f == Family::dirac_2d_isotonic;
}

inline bool is_harmonic(Family f) {
  return f == Family::dirac_1d_harmonic || f == Family::dirac_2d_harmonic;
}

/// Command-line name of a family.
inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::dirac_1d_harmonic: return "1d-ho";
    case Family::dirac_1d_isotonic: return "1d-iso";
    case Family::dirac_2d_harmonic: return "2d-ho";
    case Family::dirac_2d_isotonic: return "2d-iso";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

/// Physical constants in natural units (hbar = 1). omega is read by the
/// harmonic families, a and b by the isotonic ones.
struct PhysicalParams {
  double m = 1.0;
  double c = 1.0;
  double omega = 1.0;
  double a = 1.0;
  double b = 0.0;
};

struct ModelSpec {
  Family family = Family::dirac_1d_harmonic;
  PhysicalParams params;
  std::optional<int> ml;  // angular quantum number, planar families only

  double rest_energy() const { return params.m * params.c * params.c; }

  /// Coefficient of the linear part of the superpotential (m*omega or a).
  double linear_strength() const {
    return is_harmonic(family) ? params.m * params.omega : params.a;
  }

  /// Coefficient of the 1/x part of the superpotential (0 for harmonic).
  double inverse_strength() const { return is_harmonic(family) ? 0.0 : params.b; }

  /// m_l - b for planar families; the effective angular number.
  double effective_ml() const { return static_cast<double>(ml.value_or(0)) - inverse_strength(); }

  void validate() const {
    const auto& p = params;
    auto finite = [](double v) { return std::isfinite(v); };
    if (!(finite(p.m) && p.m > 0.0)) throw config_error("mass m must be > 0");
    if (!(finite(p.c) && p.c > 0.0)) throw config_error("speed of light c must be > 0");
    if (is_harmonic(family)) {
      if (!(finite(p.omega) && p.omega > 0.0)) throw config_error("omega must be > 0");
    } else {
      if (!(finite(p.a) && p.a > 0.0)) throw config_error("a must be > 0");
      if (!finite(p.b)) throw config_error("b must be finite");
    }
    if (family == Family::dirac_1d_isotonic && !(p.b > 0.0)) {
      throw config_error("1d-iso requires b > 0");
    }
    if (is_planar(family) != ml.has_value()) {
      throw config_error(is_planar(family) ? "planar families require m_l"
                                           : "m_l applies only to planar families");
    }
    if (family == Family::dirac_2d_harmonic && *ml == 0) {
      throw config_error("2d-ho requires m_l^2 >= 1/4, i.e. m_l != 0");
    }
    if (family == Family::dirac_2d_isotonic) {
      const double s = effective_ml();
      if (s * s < 0.25) {
        throw config_error("2d-iso requires (m_l - b)^2 >= 1/4, got (m_l - b)^2 = " +
                           std::to_string(s * s));
      }
    }
  }
};

/// y = slope * x + intercept
struct AffineMap {
  double slope = 1.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
  double inverse(double y) const { return (y - intercept) / slope; }
};

enum class Domain { full_line, half_line };

/// -d^2/dx^2 + V(x) on a line or half-line. V always has the form
/// confinement^2 x^2 + centrifugal / x^2, and both coefficients are kept so
/// domain sizing can estimate eigenvalues without solving.
struct RadialProblem {
  Domain domain = Domain::full_line;
  std::function<double(double)> potential;
  AffineMap lambda_to_E2;
  AffineMap lambda_to_eps;
  bool singular_at_zero = false;
  double confinement = 1.0;
  double centrifugal = 0.0;
};

/// W(x) for the line families.
inline double superpotential_1d(const ModelSpec& spec, double x) {
  switch (spec.family) {
    case Family::dirac_1d_harmonic:
      return spec.params.m * spec.params.omega * x;
    case Family::dirac_1d_isotonic:
      if (!(x > 0.0)) throw domain_error("1d-iso superpotential is defined for x > 0 only");
      return spec.params.a * x + spec.params.b / x;
    default:
      throw config_error("superpotential_1d called for a planar family");
  }
}

/// Radial profile w(r) of the planar superpotential, W = w(r) (cos t, sin t).
inline double superpotential_2d(const ModelSpec& spec, double r) {
  if (!is_planar(spec.family)) throw config_error("superpotential_2d called for a line family");
  if (!(r > 0.0)) throw domain_error("planar superpotential requires r > 0");
  return spec.linear_strength() * r + spec.inverse_strength() / r;
}

/// Coefficient function of the first-order operator d/dx + w~(x) that
/// factorizes the second-order problem. Line families: W itself. Planar
/// families in chi = sqrt(r) phi form: w(r) - (m_l + 1/2)/r, which maps
/// angular sector m_l onto m_l + 1.
inline double supercharge_weight(const ModelSpec& spec, double x, int ml) {
  if (!is_planar(spec.family)) return superpotential_1d(spec, x);
  return superpotential_2d(spec, x) - (ml + 0.5) / x;
}

inline double supercharge_weight(const ModelSpec& spec, double x) {
  return supercharge_weight(spec, x, spec.ml.value_or(0));
}

/// Reduce a model to its Sturm-Liouville operator and the affine maps from
/// the operator eigenvalue to E^2 and to the non-relativistic energy.
inline RadialProblem effective_problem(const ModelSpec& spec) {
  spec.validate();
  const double c = spec.params.c;
  const double c2 = c * c;
  const double mc2 = spec.rest_energy();
  const double k = spec.linear_strength();
  const double b = spec.inverse_strength();

  RadialProblem prob;
  prob.confinement = k;
  double intercept = mc2 * mc2;  // E^2 = c^2 lambda + intercept

  switch (spec.family) {
    case Family::dirac_1d_harmonic:
      prob.domain = Domain::full_line;
      prob.centrifugal = 0.0;
      intercept -= c2 * k;  // the -m omega constant
      break;
    case Family::dirac_1d_isotonic:
      prob.domain = Domain::half_line;
      prob.centrifugal = b * (b + 1.0);
      intercept += c2 * k * (2.0 * b - 1.0);
      break;
    case Family::dirac_2d_harmonic: {
      const int ml = *spec.ml;
      prob.domain = Domain::half_line;
      prob.centrifugal = ml * ml - 0.25;
      intercept -= 2.0 * mc2 * spec.params.omega * (1.0 + ml);
      break;
    }
    case Family::dirac_2d_isotonic: {
      const int ml = *spec.ml;
      const double s = spec.effective_ml();
      prob.domain = Domain::half_line;
      prob.centrifugal = s * s - 0.25;
      intercept += -2.0 * k * c2 * ml + 2.0 * k * c2 * (b - 1.0);
      break;
    }
  }
  prob.singular_at_zero = prob.centrifugal != 0.0;
  prob.lambda_to_E2 = AffineMap{c2, intercept};
  // eps = (E^2 - (mc^2)^2) / (2 m c^2)
  prob.lambda_to_eps = AffineMap{c2 / (2.0 * mc2), (intercept - mc2 * mc2) / (2.0 * mc2)};

  const double kk = k * k;
  const double cent = prob.centrifugal;
  prob.potential = [kk, cent](double x) { return kk * x * x + (cent != 0.0 ? cent / (x * x) : 0.0); };
  return prob;
}

namespace detail {

/// Central difference on interior nodes with zero Dirichlet ends.
inline std::vector<double> central_derivative(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? v[i - 1] : 0.0;
    const double right = i + 1 < n ? v[i + 1] : 0.0;
    d[i] = (right - left) / (2.0 * h);
  }
  return d;
}

}  // namespace detail

/// Lower spinor component from the upper one,
///   psi_2 = c (p - i W) psi_1 / (E + mc^2),  p = -i d/dx.
/// The result is returned in the real gauge psi_2 = -i phi_2, i.e. the
/// returned samples are phi_2 = c (psi_1' + w~ psi_1) / (E + mc^2). Planar
/// families act on the chi-form radial function and yield sector m_l + 1.
inline SampledFunction pair_recover_psi2(const ModelSpec& spec, double E, const SampledFunction& psi1) {
  const double mc2 = spec.rest_energy();
  if (std::abs(E + mc2) < 1e-12 * mc2) {
    throw solver_error("pair_recover_psi2: E + mc^2 vanishes (degenerate energy)");
  }
  const Grid& g = psi1.grid;
  const auto deriv = detail::central_derivative(psi1.values, g.h());
  SampledFunction out{g, std::vector<double>(psi1.values.size())};
  const double scale = spec.params.c / (E + mc2);
  for (std::size_t i = 0; i < psi1.values.size(); ++i) {
    const double x = g.node(static_cast<int>(i));
    out.values[i] = scale * (deriv[i] + supercharge_weight(spec, x) * psi1.values[i]);
  }
  return out;
}

}  // namespace relqosc
