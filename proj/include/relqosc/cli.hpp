#pragma once

// Command implementations behind the relqosc executable. Each command writes
// to the given streams and returns a process exit code.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "relqosc/analytic.hpp"
#include "relqosc/error.hpp"
#include "relqosc/models.hpp"
#include "relqosc/solver.hpp"
#include "relqosc/susyblock.hpp"
#include "relqosc/verify.hpp"

namespace relqosc::cli {

using nlohmann::json;

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, runtime_error = 3 };

struct RunConfig {
  std::string family = "1d-ho";
  double m = 1.0;
  double c = 1.0;
  double omega = 1.0;
  double a = 1.0;
  std::optional<double> b;  // default depends on the family
  std::optional<int> ml;    // default 1 for planar families
  int levels = 5;
  std::optional<int> grid_n;
  std::optional<double> grid_max;
  std::string method = "both";
  std::string format = "csv";
  double tolerance = 1e-4;
  std::optional<double> delta;
  std::optional<std::string> out;
  int n = 0;
  std::string suite = "all";
  std::vector<double> c_list{10.0, 20.0, 40.0};

  ModelSpec to_spec() const {
    const auto f = parse_family(family);
    if (!f) throw config_error("unknown family '" + family + "' (expected 1d-ho, 1d-iso, 2d-ho, 2d-iso)");
    ModelSpec spec;
    spec.family = *f;
    spec.params.m = m;
    spec.params.c = c;
    spec.params.omega = omega;
    spec.params.a = a;
    if (*f == Family::dirac_1d_isotonic) spec.params.b = b.value_or(1.0);
    else if (*f == Family::dirac_2d_isotonic) spec.params.b = b.value_or(0.25);
    else if (b) throw config_error("b applies only to isotonic families");
    if (is_planar(*f)) spec.ml = ml.value_or(1);
    else if (ml) throw config_error("ml applies only to planar families");
    spec.validate();
    return spec;
  }

  GridOverride grid() const {
    if (grid_n && *grid_n < 3) throw config_error("grid-n must be >= 3");
    return GridOverride{grid_n, grid_max};
  }

  void check_levels() const {
    if (levels < 1) throw config_error("levels must be >= 1");
  }
};

/// Overwrite fields of cfg from a JSON object. Unknown keys are rejected.
inline void apply_json(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "family") cfg.family = v.get<std::string>();
      else if (key == "m") cfg.m = v.get<double>();
      else if (key == "c") cfg.c = v.get<double>();
      else if (key == "omega") cfg.omega = v.get<double>();
      else if (key == "a") cfg.a = v.get<double>();
      else if (key == "b") cfg.b = v.get<double>();
      else if (key == "ml") cfg.ml = v.get<int>();
      else if (key == "levels") cfg.levels = v.get<int>();
      else if (key == "grid_n") cfg.grid_n = v.get<int>();
      else if (key == "grid_max") cfg.grid_max = v.get<double>();
      else if (key == "method") cfg.method = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "tolerance") cfg.tolerance = v.get<double>();
      else if (key == "delta") cfg.delta = v.get<double>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "suite") cfg.suite = v.get<std::string>();
      else if (key == "c_list") cfg.c_list = v.get<std::vector<double>>();
      else throw config_error("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("bad config value: ") + e.what());
  }
}

inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw config_error("cannot parse config file " + path + ": " + e.what());
  }
  apply_json(j, cfg);
}

/// %.12g text form used in every table.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// JSON value rounded to the same 12 significant digits as the CSV output.
inline json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt(v).c_str(), nullptr);
}

inline json params_json(const ModelSpec& spec) {
  json p;
  p["m"] = jnum(spec.params.m);
  p["c"] = jnum(spec.params.c);
  if (is_harmonic(spec.family)) {
    p["omega"] = jnum(spec.params.omega);
  } else {
    p["a"] = jnum(spec.params.a);
    p["b"] = jnum(spec.params.b);
  }
  if (spec.ml) p["ml"] = *spec.ml;
  return p;
}

inline std::string params_text(const ModelSpec& spec) {
  std::string s = "m=" + fmt(spec.params.m) + " c=" + fmt(spec.params.c);
  if (is_harmonic(spec.family)) s += " omega=" + fmt(spec.params.omega);
  else s += " a=" + fmt(spec.params.a) + " b=" + fmt(spec.params.b);
  if (spec.ml) s += " ml=" + std::to_string(*spec.ml);
  return s;
}

namespace detail {

inline void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw config_error("format must be csv or json, got '" + cfg.format + "'");
  }
}

// Runs body and maps library exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const solver_error& e) {
    err << "solver error: " << e.what() << "\n";
    return runtime_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return runtime_error;
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  void write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out << ",";
        if (r[i]) out << fmt(*r[i]);
      }
      out << "\n";
    }
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (!r[i]) o[columns[i]] = nullptr;
        else if (columns[i] == "n") o[columns[i]] = static_cast<int>(*r[i]);
        else o[columns[i]] = jnum(*r[i]);
      }
      arr.push_back(std::move(o));
    }
    return arr;
  }
};

}  // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto spec = cfg.to_spec();
    cfg.check_levels();
    detail::check_format(cfg);
    const bool want_analytic = cfg.method == "analytic" || cfg.method == "both";
    const bool want_numeric = cfg.method == "numeric" || cfg.method == "both";
    if (!want_analytic && !want_numeric) {
      throw config_error("method must be analytic, numeric or both, got '" + cfg.method + "'");
    }
    std::optional<SpectrumTable> ana;
    std::optional<SpectrumTable> num;
    if (want_analytic) ana = build_spectrum_table(spec, cfg.levels);
    if (want_numeric) num = numeric_spectrum(spec, cfg.levels, cfg.grid());

    detail::Table t{{"n", "e2_analytic", "e2_numeric", "e", "eps", "rel_err"}, {}};
    for (int n = 0; n < cfg.levels; ++n) {
      const auto i = static_cast<std::size_t>(n);
      std::vector<std::optional<double>> row(6);
      row[0] = n;
      const Level& shown = num ? num->levels[i] : ana->levels[i];
      if (ana) row[1] = ana->levels[i].E2;
      if (num) row[2] = num->levels[i].E2;
      row[3] = shown.E;
      row[4] = shown.eps;
      if (ana && num) row[5] = std::abs(num->levels[i].E2 - ana->levels[i].E2) / ana->levels[i].E2;
      t.rows.push_back(std::move(row));
    }
    if (cfg.format == "csv") {
      t.write_csv(out);
    } else {
      json j;
      j["family"] = std::string(family_name(spec.family));
      j["params"] = params_json(spec);
      j["method"] = cfg.method;
      j["levels"] = t.to_json();
      out << j.dump(2) << "\n";
    }
    return static_cast<int>(ok);
  });
}

inline int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto spec = cfg.to_spec();
    cfg.check_levels();
    if (cfg.format != "csv") throw config_error("wavefunction output is CSV only");
    if (cfg.n < 0 || cfg.n >= cfg.levels) {
      throw config_error("n must satisfy 0 <= n < levels (" + std::to_string(cfg.levels) + ")");
    }
    const int k = cfg.n + 1;
    const auto sol = solve_numeric(spec, k, grid_for(effective_problem(spec), k, cfg.grid()));
    const auto& grid = sol.grid;
    const auto& state = sol.states[static_cast<std::size_t>(cfg.n)];
    const auto& level = sol.table.levels[static_cast<std::size_t>(cfg.n)];

    std::vector<double> ana(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
      ana[static_cast<std::size_t>(i)] = analytic_wavefunction(spec, cfg.n, grid.node(i));
    }
    double norm = 0.0;
    for (double v : ana) norm += v * v;
    norm = std::sqrt(norm * grid.h());
    if (norm > 0.0) {
      for (double& v : ana) v /= norm;
    }
    fix_sign(ana);
    const auto psi2 = pair_recover_psi2(spec, level.E, SampledFunction{grid, state.vector});

    std::ofstream file;
    std::ostream* dst = &out;
    if (cfg.out) {
      file.open(*cfg.out);
      if (!file) throw std::runtime_error("cannot open output file " + *cfg.out);
      dst = &file;
    }
    *dst << "# relqosc wavefunction family=" << family_name(spec.family) << " n=" << cfg.n << " "
         << params_text(spec) << " E=" << fmt(level.E) << "\n";
    *dst << "x,psi1_analytic_normalized,psi1_numeric,psi2_numeric\n";
    for (int i = 0; i < grid.n_points; ++i) {
      const auto u = static_cast<std::size_t>(i);
      *dst << fmt(grid.node(i)) << "," << fmt(ana[u]) << "," << fmt(state.vector[u]) << ","
           << fmt(psi2.values[u]) << "\n";
    }
    dst->flush();
    if (!*dst) throw std::runtime_error("write failed");
    return static_cast<int>(ok);
  });
}

inline int report_checks(const std::vector<verify::CheckResult>& checks, std::ostream& out,
                         std::ostream& err) {
  json failures = json::array();
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << fmt(c.value)
        << " threshold=" << fmt(c.threshold) << "\n";
    if (!c.passed) {
      failures.push_back({{"name", c.name}, {"value", jnum(c.value)}, {"threshold", jnum(c.threshold)}});
    }
  }
  out << checks.size() - failures.size() << "/" << checks.size() << " checks passed\n";
  if (!failures.empty()) {
    err << failures.dump(2) << "\n";
    return verification_failed;
  }
  return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!verify::is_suite(cfg.suite)) {
      throw config_error("unknown suite '" + cfg.suite + "' (expected all, spectrum, susy, nonrel, pair)");
    }
    if (!(cfg.tolerance > 0.0)) throw config_error("tolerance must be > 0");
    verify::Tolerances tol;
    tol.numeric_rel = cfg.tolerance;
    return report_checks(verify::run_suite(cfg.suite, tol), out, err);
  });
}

/// Sweep table of E - mc^2 against eps over the c list, then the nonrel suite.
inline int cmd_nonrel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    auto spec = cfg.to_spec();
    cfg.check_levels();
    detail::check_format(cfg);
    if (cfg.c_list.size() < 2) throw config_error("c-list needs at least two values");
    for (std::size_t i = 0; i < cfg.c_list.size(); ++i) {
      if (!(cfg.c_list[i] > 0.0)) throw config_error("c-list values must be > 0");
      if (i && !(cfg.c_list[i] > cfg.c_list[i - 1])) throw config_error("c-list must be increasing");
    }
    detail::Table t{{"n", "c", "e_minus_mc2", "eps", "gap", "ratio"}, {}};
    for (int n = 0; n < cfg.levels; ++n) {
      std::optional<double> prev;
      for (double c : cfg.c_list) {
        spec.params.c = c;
        const double mc2 = spec.rest_energy();
        const double s = analytic_E2(spec, n) - mc2 * mc2;
        const double kinetic = s / (std::sqrt(mc2 * mc2 + s) + mc2);
        const double gap = verify::nonrel_gap(spec, n);
        std::optional<double> ratio;
        if (prev && gap > 0.0) ratio = *prev / gap;
        t.rows.push_back({n, c, kinetic, analytic_nonrel_eps(spec, n), gap, ratio});
        prev = gap;
      }
    }
    if (cfg.format == "csv") {
      t.write_csv(out);
    } else {
      json j;
      j["family"] = std::string(family_name(spec.family));
      spec.params.c = cfg.c;
      j["params"] = params_json(spec);
      j["sweep"] = t.to_json();
      out << j.dump(2) << "\n";
    }
    verify::Tolerances tol;
    std::ostringstream sink;
    const int code = report_checks(verify::nonrel_suite(tol, cfg.c_list), sink, err);
    err << sink.str();
    return code;
  });
}

/// Anti-Jaynes-Cummings block form: coupling, ladder spectrum and the
/// resulting +-E pairs against the closed form.
inline int cmd_ajc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto spec = cfg.to_spec();
    cfg.check_levels();
    detail::check_format(cfg);
    const int k = cfg.levels;
    const auto grid = grid_for(effective_problem(spec), k, cfg.grid());
    if (k > grid.n_points - 1) throw config_error("levels must be smaller than the grid size");
    const auto pair = discretize_supercharge(spec, grid, cfg.delta);
    const auto h = build_block_hamiltonian(pair, spec.rest_energy());
    const auto es = block_spectrum(h, k);
    const auto ata = ata_eigenvalues(pair, k);
    detail::Table t{{"n", "g", "delta", "ata", "e_plus", "e_minus", "e2_block", "e2_analytic", "rel_err"}, {}};
    for (int n = 0; n < k; ++n) {
      const double e_plus = es[static_cast<std::size_t>(k + n)];
      const double e_minus = es[static_cast<std::size_t>(k - 1 - n)];
      const double e2 = e_plus * e_plus;
      const double e2a = analytic_E2(spec, n);
      t.rows.push_back({n, pair.g, pair.delta, ata[static_cast<std::size_t>(n)], e_plus, e_minus, e2, e2a,
                        std::abs(e2 - e2a) / e2a});
    }
    if (cfg.format == "csv") {
      t.write_csv(out);
    } else {
      json j;
      j["family"] = std::string(family_name(spec.family));
      j["params"] = params_json(spec);
      j["levels"] = t.to_json();
      out << j.dump(2) << "\n";
    }
    return static_cast<int>(ok);
  });
}

}  // namespace relqosc::cli
