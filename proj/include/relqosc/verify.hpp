#pragma once

// Property suites over a fixed matrix of parameter sets. Each check yields
// a measured value and the threshold it is held to.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "relqosc/analytic.hpp"
#include "relqosc/models.hpp"
#include "relqosc/solver.hpp"
#include "relqosc/susyblock.hpp"

namespace relqosc::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct Tolerances {
  double numeric_rel = 1e-4;   // numeric vs closed-form E^2
  double equispacing = 1e-3;   // std(gap) / mean(gap), numeric route
  double pair_residual = 5e-3;
  double block_rel = 1e-2;     // first-order supercharge stencil
  double isospectral = 1e-10;
  double dense_route = 1e-8;
  double ladder = 1e-2;        // A^+ A eigenvalues vs integers
  double commutator = 5e-2;
  double nonrel_ratio = 0.5;   // |ratio - 4|
};

inline ModelSpec make_spec(Family f, double m, double c, double k, double b = 0.0, int ml = 0) {
  ModelSpec s;
  s.family = f;
  s.params.m = m;
  s.params.c = c;
  if (is_harmonic(f)) {
    s.params.omega = k;
  } else {
    s.params.a = k;
    s.params.b = b;
  }
  if (is_planar(f)) s.ml = ml;
  return s;
}

/// Three parameter sets per family; the first is the CLI default.
inline std::vector<ModelSpec> parameter_matrix(Family f) {
  switch (f) {
    case Family::dirac_1d_harmonic:
      return {make_spec(f, 1, 1, 1), make_spec(f, 1, 2, 0.5), make_spec(f, 2, 1, 1.5)};
    case Family::dirac_1d_isotonic:
      return {make_spec(f, 1, 1, 1, 1), make_spec(f, 1, 1, 2, 2.5), make_spec(f, 2, 1.5, 0.8, 2)};
    case Family::dirac_2d_harmonic:
      return {make_spec(f, 1, 1, 1, 0, 1), make_spec(f, 1, 1, 1, 0, -1), make_spec(f, 2, 1, 0.5, 0, 2)};
    case Family::dirac_2d_isotonic:
      return {make_spec(f, 1, 1, 1, 0.25, 1), make_spec(f, 1, 1, 1, 0.5, -1),
              make_spec(f, 1, 2, 0.7, -0.3, 2)};
  }
  return {};
}

inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return std::string(buf);
}

inline std::string describe(const ModelSpec& s) {
  const auto num = short_num;
  std::string out(family_name(s.family));
  out += "(m=" + num(s.params.m) + ",c=" + num(s.params.c);
  if (is_harmonic(s.family)) out += ",omega=" + num(s.params.omega);
  else out += ",a=" + num(s.params.a) + ",b=" + num(s.params.b);
  if (s.ml) out += ",ml=" + std::to_string(*s.ml);
  return out + ")";
}

/// Exact E^2 gap of each family: 2mc^2 omega, 4ac^2, 4mc^2 omega, 4ac^2.
inline double expected_gap(const ModelSpec& s) {
  const auto& p = s.params;
  switch (s.family) {
    case Family::dirac_1d_harmonic: return 2.0 * p.m * p.c * p.c * p.omega;
    case Family::dirac_1d_isotonic: return 4.0 * p.a * p.c * p.c;
    case Family::dirac_2d_harmonic: return 4.0 * p.m * p.c * p.c * p.omega;
    case Family::dirac_2d_isotonic: return 4.0 * p.a * p.c * p.c;
  }
  return 0.0;
}

inline CheckResult check(std::string name, double value, double threshold) {
  return CheckResult{std::move(name), value <= threshold, value, threshold};
}

/// Closed-form equispacing, numeric agreement, numeric equispacing, node
/// counts, m_l degeneracy and the b -> 0 / a = m omega reductions.
inline std::vector<CheckResult> spectrum_suite(const Tolerances& tol = {}) {
  constexpr int kLevels = 5;
  std::vector<CheckResult> out;
  for (Family f : kAllFamilies) {
    for (const auto& spec : parameter_matrix(f)) {
      const std::string tag = describe(spec);
      const auto ana = build_spectrum_table(spec, kLevels);
      const double gap = expected_gap(spec);
      double worst_gap = 0.0;
      for (int n = 0; n + 1 < kLevels; ++n) {
        const double d = ana.levels[n + 1].E2 - ana.levels[n].E2;
        // in units of the rounding scale of E^2
        worst_gap = std::max(worst_gap, std::abs(d - gap) /
                                            (std::numeric_limits<double>::epsilon() * ana.levels[n + 1].E2));
      }
      out.push_back(check("analytic equispacing " + tag + " [ulp]", worst_gap, 8.0));

      const auto sol = solve_numeric(spec, kLevels);
      double worst = 0.0;
      int node_mismatch = 0;
      std::vector<double> gaps;
      for (int n = 0; n < kLevels; ++n) {
        const double e2n = sol.table.levels[n].E2;
        worst = std::max(worst, std::abs(e2n - ana.levels[n].E2) / ana.levels[n].E2);
        if (sol.states[n].nodes != n) ++node_mismatch;
        if (n > 0) gaps.push_back(e2n - sol.table.levels[n - 1].E2);
      }
      out.push_back(check("numeric vs closed form " + tag, worst, tol.numeric_rel));
      out.push_back(check("eigenvector node counts " + tag, node_mismatch, 0.0));
      double mean = 0.0;
      for (double g : gaps) mean += g;
      mean /= gaps.size();
      double var = 0.0;
      for (double g : gaps) var += (g - mean) * (g - mean);
      out.push_back(check("numeric equispacing " + tag, std::sqrt(var / gaps.size()) / mean, tol.equispacing));
    }
  }

  // m_l degeneracy in the planar families
  for (Family f : {Family::dirac_2d_harmonic, Family::dirac_2d_isotonic}) {
    const auto base = parameter_matrix(f).front();
    double exact_dev = 0.0;
    double numeric_dev = 0.0;
    ModelSpec ref = base;
    ref.ml = 1;
    const auto ref_num = numeric_spectrum(ref, 3);
    for (int ml = 1; ml <= 5; ++ml) {
      ModelSpec s = base;
      s.ml = ml;
      const auto num = numeric_spectrum(s, 3);
      for (int n = 0; n < 3; ++n) {
        exact_dev = std::max(exact_dev, std::abs(analytic_E2(s, n) - analytic_E2(ref, n)));
        numeric_dev = std::max(numeric_dev, std::abs(num.levels[n].E2 - ref_num.levels[n].E2) /
                                                ref_num.levels[n].E2);
      }
    }
    out.push_back(check("m_l degeneracy closed form " + std::string(family_name(f)), exact_dev, 0.0));
    out.push_back(check("m_l degeneracy numeric " + std::string(family_name(f)), numeric_dev, tol.numeric_rel));
  }

  // b -> 0 embedding of the line isotonic family onto odd harmonic levels
  {
    double worst = 0.0;
    for (int n = 0; n < kLevels; ++n) {
      const auto iso = make_spec(Family::dirac_1d_isotonic, 1, 1, 1, 1e-12);
      const auto ho = make_spec(Family::dirac_1d_harmonic, 1, 1, 1);
      const double e_iso = analytic_E2(iso, n);
      const double e_ho = analytic_E2(ho, 2 * n + 1);
      worst = std::max(worst, std::abs(e_iso - e_ho) / e_ho);
    }
    out.push_back(check("b->0 embedding 1d-iso onto odd 1d-ho levels", worst, 1e-8));
  }
  // a = m omega, b = 0 reduction of the planar isotonic family
  {
    double worst = 0.0;
    for (int ml : {-3, -1, 1, 2, 4}) {
      const auto ho = make_spec(Family::dirac_2d_harmonic, 1.5, 1.2, 0.8, 0, ml);
      const auto iso = make_spec(Family::dirac_2d_isotonic, 1.5, 1.2, 1.5 * 0.8, 0.0, ml);
      for (int n = 0; n < kLevels; ++n) {
        worst = std::max(worst, std::abs(analytic_E2(iso, n) - analytic_E2(ho, n)));
      }
    }
    out.push_back(check("2d-iso at a=m*omega, b=0 equals 2d-ho", worst, 0.0));
  }
  return out;
}

/// |(E_n - mc^2) - eps_n| as c doubles over 10, 20, 40; must shrink ~4x.
inline double nonrel_gap(const ModelSpec& spec, int n) {
  const double mc2 = spec.rest_energy();
  const double s = analytic_E2(spec, n) - mc2 * mc2;
  const double kinetic = s / (std::sqrt(mc2 * mc2 + s) + mc2);  // E - mc^2 without cancellation
  return std::abs(kinetic - analytic_nonrel_eps(spec, n));
}

inline std::vector<CheckResult> nonrel_suite(const Tolerances& tol = {},
                                             const std::vector<double>& c_list = {10.0, 20.0, 40.0}) {
  std::vector<CheckResult> out;
  for (Family f : kAllFamilies) {
    const auto base = parameter_matrix(f).front();
    for (int n = 0; n <= 3; ++n) {
      // the closed-form limit must match the Schrodinger operator's spectrum
      const double diff = std::abs(analytic_nonrel_eps(base, n) - schrodinger_limit_eps(base, n));
      out.push_back(check("nonrel eps vs Schrodinger limit " + describe(base) + " n=" + std::to_string(n),
                          diff, 1e-12 * std::max(1.0, std::abs(schrodinger_limit_eps(base, n)))));
      for (std::size_t i = 0; i + 1 < c_list.size(); ++i) {
        ModelSpec lo = base;
        ModelSpec hi = base;
        lo.params.c = c_list[i];
        hi.params.c = c_list[i + 1];
        const double d_lo = nonrel_gap(lo, n);
        const double d_hi = nonrel_gap(hi, n);
        const double expected = std::pow(c_list[i + 1] / c_list[i], 2);
        std::string name = "nonrel O(1/c^2) " + describe(base) + " n=" + std::to_string(n) + " c=" +
                           short_num(c_list[i]) + "->" + short_num(c_list[i + 1]);
        if (d_lo == 0.0 && d_hi == 0.0) {
          // rest-energy level, E = mc^2 and eps = 0 for every c
          out.push_back(check(std::move(name) + " (exact)", 0.0, 0.0));
          continue;
        }
        const double ratio = d_hi > 0.0 ? d_lo / d_hi : std::numeric_limits<double>::infinity();
        out.push_back(check(std::move(name), std::abs(ratio - expected), tol.nonrel_ratio * expected / 4.0));
      }
    }
  }
  return out;
}

/// Spinor-pair closure for the line families, n <= 3, and its refinement.
inline std::vector<CheckResult> pair_suite(const Tolerances& tol = {}) {
  std::vector<CheckResult> out;
  for (Family f : {Family::dirac_1d_harmonic, Family::dirac_1d_isotonic}) {
    for (const auto& spec : parameter_matrix(f)) {
      const auto prob = effective_problem(spec);
      const Grid coarse = choose_domain(prob, 4);
      const Grid fine{coarse.x_min, coarse.x_max, 2 * coarse.n_points + 1};
      const auto a = solve_numeric(spec, 4, coarse);
      const auto b = solve_numeric(spec, 4, fine);
      for (int n = 0; n <= 3; ++n) {
        const double r1 = residual_pair_check(spec, a.table.levels[n], a.states[n], coarse);
        const double r2 = residual_pair_check(spec, b.table.levels[n], b.states[n], fine);
        const std::string tag = describe(spec) + " n=" + std::to_string(n);
        out.push_back(check("pair residual " + tag, r1, tol.pair_residual));
        out.push_back(check("pair residual refinement r(h/2)/r(h) " + tag, r2 / r1, 0.5));
      }
    }
  }
  return out;
}

inline std::vector<CheckResult> susy_suite(const Tolerances& tol = {}) {
  std::vector<CheckResult> out;
  constexpr int kLevels = 4;
  for (Family f : kAllFamilies) {
    for (const auto& spec : parameter_matrix(f)) {
      const std::string tag = describe(spec);
      const auto prob = effective_problem(spec);
      const Grid grid = choose_domain(prob, kLevels);
      const auto pair = discretize_supercharge(spec, grid);
      const auto iso = susy_isospectrality_check(pair, kLevels, tol.isospectral);
      out.push_back(check("D^T D / D D^T isospectral " + tag, iso.max_rel_diff, tol.isospectral));

      const double mc2 = spec.rest_energy();
      const auto h = build_block_hamiltonian(pair, mc2);
      const auto es = block_spectrum(h, kLevels);
      double asym = 0.0;
      for (std::size_t i = 0; i < es.size(); ++i) asym = std::max(asym, std::abs(es[i] + es[es.size() - 1 - i]));
      out.push_back(check("block spectrum +- pairing " + tag, asym, 0.0));
      double worst = 0.0;
      for (int n = 0; n < kLevels; ++n) {
        const double e = es[static_cast<std::size_t>(kLevels + n)];
        const double exact = std::sqrt(analytic_E2(spec, n));
        worst = std::max(worst, std::abs(e - exact) / exact);
      }
      out.push_back(check("block route E_n vs closed form " + tag, worst, tol.block_rel));

      // brute force on a small grid
      const Grid small = choose_domain(prob, kLevels, 150);
      const auto hs = build_block_hamiltonian(discretize_supercharge(spec, small), mc2);
      const auto dense = dense_block_spectrum(hs);
      const auto routed = block_spectrum(hs, small.n_points);
      double dev = 0.0;
      for (std::size_t i = 0; i < dense.size(); ++i) {
        dev = std::max(dev, std::abs(dense[i] - routed[i]) / std::max(1.0, std::abs(dense[i])));
      }
      out.push_back(check("dense 2Nx2N vs D^T D route " + tag, dev, tol.dense_route));
    }
  }

  // oscillator algebra with delta = 4 m omega
  for (const auto& spec : parameter_matrix(Family::dirac_2d_harmonic)) {
    const auto prob = effective_problem(spec);
    const Grid grid = choose_domain(prob, kLevels);
    const auto pair = discretize_supercharge(spec, grid);
    const auto ata = ata_eigenvalues(pair, kLevels);
    // A^+ A has eigenvalues n + (|m_l| - m_l)/2 in sector m_l
    const int ml = *spec.ml;
    const double offset = 0.5 * (std::abs(ml) - ml);
    double worst = 0.0;
    for (int n = 0; n < kLevels; ++n) worst = std::max(worst, std::abs(ata[n] - (n + offset)));
    out.push_back(check("A^+A integer ladder " + describe(spec), worst, tol.ladder));

    double comm = 0.0;
    for (double centre : {2.0, 2.5, 3.0}) {
      std::vector<double> f(static_cast<std::size_t>(grid.n_points));
      const double width = 0.5 / std::sqrt(spec.linear_strength());
      const double x0 = centre / std::sqrt(spec.linear_strength());
      for (int i = 0; i < grid.n_points; ++i) {
        const double u = (grid.node(i) - x0) / width;
        f[static_cast<std::size_t>(i)] = std::exp(-u * u);
      }
      comm = std::max(comm, std::abs(commutator_expectation(spec, grid, pair.delta, f) - 1.0));
    }
    out.push_back(check("[A,A^+] = 1 on test Gaussians " + describe(spec), comm, tol.commutator));
  }
  return out;
}

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"all", "spectrum", "susy", "nonrel", "pair"};
  return names;
}

inline bool is_suite(std::string_view s) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), s) != n.end();
}

inline std::vector<CheckResult> run_suite(std::string_view suite, const Tolerances& tol = {}) {
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  if (suite == "spectrum" || suite == "all") append(spectrum_suite(tol));
  if (suite == "susy" || suite == "all") append(susy_suite(tol));
  if (suite == "nonrel" || suite == "all") append(nonrel_suite(tol));
  if (suite == "pair" || suite == "all") append(pair_suite(tol));
  return out;
}

}  // namespace relqosc::verify
