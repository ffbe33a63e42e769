#pragma once

// Finite-difference solution of the reduced Sturm-Liouville problems.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "relqosc/analytic.hpp"
#include "relqosc/error.hpp"
#include "relqosc/grid.hpp"
#include "relqosc/models.hpp"
#include "relqosc/tridiagonal.hpp"

namespace relqosc {

inline constexpr int kDefaultGridPoints = 4000;

/// Optional user overrides for the automatically chosen grid.
struct GridOverride {
  std::optional<int> n_points;
  std::optional<double> x_max;
};

/// Estimate of the operator eigenvalue of level n from the potential's
/// coefficients (exact for the confinement^2 x^2 + C/x^2 form).
inline double lambda_estimate(const RadialProblem& prob, int n) {
  const double k = prob.confinement;
  if (prob.domain == Domain::full_line) return k * (2.0 * n + 1.0);
  const double s = std::sqrt(std::max(prob.centrifugal + 0.25, 0.0));
  return k * (4.0 * n + 2.0 * s + 2.0);
}

/// Grid large enough that the top requested level has decayed: x_max is the
/// first point where V(x_max) >= 3 lambda_est and the WKB tail integral
/// from the turning point exceeds kTailAction.
inline Grid choose_domain(const RadialProblem& prob, int k, int n_points = kDefaultGridPoints) {
  constexpr double kTailAction = 20.0;
  constexpr double kLimit = 1e6;
  if (k < 1) throw config_error("choose_domain: k must be >= 1");
  if (!(prob.confinement > 0.0)) throw config_error("choose_domain: confinement must be > 0");
  const double lambda = lambda_estimate(prob, k - 1);
  const double scale = 1.0 / std::sqrt(prob.confinement);
  const double dx = 1e-3 * scale;

  double x = 0.0;
  if (prob.centrifugal > 0.0) {
    x = std::pow(prob.centrifugal / (prob.confinement * prob.confinement), 0.25);  // well bottom
  }
  double action = 0.0;
  double prev = std::sqrt(std::max(prob.potential(std::max(x, dx)) - lambda, 0.0));
  while (true) {
    x += dx;
    if (x > kLimit) {
      throw solver_error("choose_domain: potential does not confine level " + std::to_string(k - 1) +
                         " within x = 1e6");
    }
    const double v = prob.potential(x);
    const double cur = std::sqrt(std::max(v - lambda, 0.0));
    action += 0.5 * (prev + cur) * dx;
    prev = cur;
    if (action >= kTailAction && v >= 3.0 * lambda) break;
  }
  Grid g;
  g.x_max = x;
  g.x_min = prob.domain == Domain::full_line ? -x : 0.0;
  g.n_points = n_points;
  g.validate();
  return g;
}

/// Three-point stencil for -d^2/dx^2 + V with Dirichlet ends.
inline TridiagonalOperator discretize(const RadialProblem& prob, const Grid& grid) {
  grid.validate();
  if (prob.domain == Domain::half_line && grid.x_min < 0.0) {
    throw domain_error("half-line problem needs a grid with x_min >= 0");
  }
  const double h = grid.h();
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalOperator t;
  t.diag.resize(static_cast<std::size_t>(grid.n_points));
  t.offdiag.assign(static_cast<std::size_t>(grid.n_points - 1), -inv_h2);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.node(i);
    const double v = prob.potential(x);
    if (!std::isfinite(v)) {
      throw solver_error("potential is not finite at node " + std::to_string(i) + " (x = " +
                         std::to_string(x) + ")");
    }
    t.diag[static_cast<std::size_t>(i)] = 2.0 * inv_h2 + v;
  }
  return t;
}

/// Everything produced by one numeric solve.
struct NumericSolution {
  RadialProblem problem;
  Grid grid;
  std::vector<EigenResult> states;
  SpectrumTable table;
};

inline Grid grid_for(const RadialProblem& prob, int k, const GridOverride& over) {
  const int n_points = over.n_points.value_or(kDefaultGridPoints);
  if (n_points < 3) throw config_error("grid needs at least 3 points");
  if (over.x_max) {
    if (!(*over.x_max > 0.0)) throw config_error("grid x_max must be > 0");
    Grid g{prob.domain == Domain::full_line ? -*over.x_max : 0.0, *over.x_max, n_points};
    g.validate();
    return g;
  }
  return choose_domain(prob, k, n_points);
}

/// Solve the lowest k levels of spec on a given grid.
inline NumericSolution solve_numeric(const ModelSpec& spec, int k, const Grid& grid) {
  if (k < 1) throw config_error("number of levels must be >= 1, got " + std::to_string(k));
  NumericSolution sol{effective_problem(spec), grid, {}, {spec, {}, Source::numeric}};
  const auto op = discretize(sol.problem, grid);
  EigenOptions opt;
  opt.weight = grid.h();
  sol.states = eigen_lowest(op, k, opt);
  for (int n = 0; n < k; ++n) {
    const double lambda = sol.states[static_cast<std::size_t>(n)].lambda;
    const double e2 = sol.problem.lambda_to_E2(lambda);
    if (!(e2 >= 0.0)) {
      throw solver_error("negative E^2 = " + std::to_string(e2) + " at level " + std::to_string(n) +
                         "; the discretization failed");
    }
    sol.table.levels.push_back(Level{n, e2, std::sqrt(e2), sol.problem.lambda_to_eps(lambda)});
  }
  return sol;
}

inline NumericSolution solve_numeric(const ModelSpec& spec, int k, const GridOverride& over = {}) {
  if (k < 1) throw config_error("number of levels must be >= 1, got " + std::to_string(k));
  return solve_numeric(spec, k, grid_for(effective_problem(spec), k, over));
}

inline SpectrumTable numeric_spectrum(const ModelSpec& spec, int k, const GridOverride& over = {}) {
  return solve_numeric(spec, k, over).table;
}

/// Relative residual of the second first-order equation,
///   || c (p + i W) psi_2 - (E - mc^2) psi_1 || / || psi_1 ||,
/// with psi_2 recovered from psi_1 by the first equation. Evaluated on the
/// nodes where both central differences are defined.
inline double residual_pair_check(const ModelSpec& spec, const Level& level, const EigenResult& psi1,
                                  const Grid& grid) {
  double norm1 = 0.0;
  for (double v : psi1.vector) norm1 += v * v;
  if (norm1 == 0.0) return 0.0;
  const SampledFunction in{grid, psi1.vector};
  const auto psi2 = pair_recover_psi2(spec, level.E, in);
  const auto d2 = detail::central_derivative(psi2.values, grid.h());
  const double c = spec.params.c;
  const double shift = level.E - spec.rest_energy();
  double res = 0.0;
  const int n = grid.n_points;
  for (int i = 1; i + 1 < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double w = supercharge_weight(spec, grid.node(i));
    const double r = c * (-d2[ui] + w * psi2.values[ui]) - shift * psi1.vector[ui];
    res += r * r;
  }
  return std::sqrt(res / norm1);
}

/// log2 of the ratio of eigenvalue errors on grids with spacing h and h/2.
inline double convergence_order(const RadialProblem& prob, const Grid& coarse, int n,
                                double exact_lambda) {
  const Grid fine{coarse.x_min, coarse.x_max, 2 * coarse.n_points + 1};  // exactly h/2
  auto err = [&](const Grid& g) {
    EigenOptions opt;
    opt.weight = g.h();
    const auto states = eigen_lowest(discretize(prob, g), n + 1, opt);
    return std::abs(states[static_cast<std::size_t>(n)].lambda - exact_lambda);
  };
  const double e1 = err(coarse);
  const double e2 = err(fine);
  if (e1 == 0.0 || e2 == 0.0) throw solver_error("convergence_order: error vanished on a grid");
  return std::log2(e1 / e2);
}

/// Observed order of the E^2 error for level n against the closed form.
inline double convergence_order(const ModelSpec& spec, int n, int base_points = kDefaultGridPoints) {
  const auto prob = effective_problem(spec);
  const Grid coarse = choose_domain(prob, n + 1, base_points);
  const double exact_lambda = prob.lambda_to_E2.inverse(analytic_E2(spec, n));
  return convergence_order(prob, coarse, n, exact_lambda);
}

}  // namespace relqosc
