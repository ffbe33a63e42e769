#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relqosc/cli.hpp"

namespace {

using relqosc::cli::RunConfig;

// Raw flag values; only the ones given on the command line are applied, on
// top of the config file.
struct Flags {
  std::string config;
  std::string family;
  double m = 0, c = 0, omega = 0, a = 0, b = 0, grid_max = 0, tolerance = 0, delta = 0;
  int ml = 0, levels = 0, grid_n = 0, n = 0;
  std::string method, format, out, suite;
  std::vector<double> c_list;
  std::vector<std::pair<CLI::Option*, void (*)(const Flags&, RunConfig&)>> setters;
};

void add_model_options(CLI::App* sub, Flags& f) {
  auto bind = [&](CLI::Option* o, void (*set)(const Flags&, RunConfig&)) { f.setters.emplace_back(o, set); };
  sub->add_option("--config", f.config, "JSON file with default settings; flags take precedence");
  bind(sub->add_option("--family", f.family, "1d-ho, 1d-iso, 2d-ho or 2d-iso"),
       [](const Flags& x, RunConfig& r) { r.family = x.family; });
  bind(sub->add_option("--m", f.m, "mass"), [](const Flags& x, RunConfig& r) { r.m = x.m; });
  bind(sub->add_option("--c", f.c, "speed of light"), [](const Flags& x, RunConfig& r) { r.c = x.c; });
  bind(sub->add_option("--omega", f.omega, "oscillator frequency (harmonic families)"),
       [](const Flags& x, RunConfig& r) { r.omega = x.omega; });
  bind(sub->add_option("--a", f.a, "linear superpotential strength (isotonic families)"),
       [](const Flags& x, RunConfig& r) { r.a = x.a; });
  bind(sub->add_option("--b", f.b, "inverse superpotential strength (isotonic families)"),
       [](const Flags& x, RunConfig& r) { r.b = x.b; });
  bind(sub->add_option("--ml", f.ml, "angular quantum number (planar families)"),
       [](const Flags& x, RunConfig& r) { r.ml = x.ml; });
  bind(sub->add_option("--levels", f.levels, "number of levels"),
       [](const Flags& x, RunConfig& r) { r.levels = x.levels; });
  bind(sub->add_option("--grid-n", f.grid_n, "interior grid points"),
       [](const Flags& x, RunConfig& r) { r.grid_n = x.grid_n; });
  bind(sub->add_option("--grid-max", f.grid_max, "domain half-width or radius"),
       [](const Flags& x, RunConfig& r) { r.grid_max = x.grid_max; });
  bind(sub->add_option("--format", f.format, "csv or json"),
       [](const Flags& x, RunConfig& r) { r.format = x.format; });
}

void apply(const Flags& f, RunConfig& cfg) {
  if (!f.config.empty()) relqosc::cli::load_config_file(f.config, cfg);
  for (const auto& [opt, set] : f.setters) {
    if (opt->count() > 0) set(f, cfg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Dirac oscillator and Dirac-isotonic oscillator models"};
  app.require_subcommand(1);
  Flags f;

  auto* spectrum = app.add_subcommand("spectrum", "analytic and numeric energy levels");
  add_model_options(spectrum, f);
  f.setters.emplace_back(spectrum->add_option("--method", f.method, "analytic, numeric or both"),
                         [](const Flags& x, RunConfig& r) { r.method = x.method; });

  auto* wave = app.add_subcommand("wavefunction", "sampled spinor components of one level");
  add_model_options(wave, f);
  f.setters.emplace_back(wave->add_option("--n", f.n, "level index"),
                         [](const Flags& x, RunConfig& r) { r.n = x.n; });
  f.setters.emplace_back(wave->add_option("--out", f.out, "output CSV path (default stdout)"),
                         [](const Flags& x, RunConfig& r) { r.out = x.out; });

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--config", f.config, "JSON file with default settings");
  f.setters.emplace_back(verify->add_option("--suite", f.suite, "all, spectrum, susy, nonrel or pair"),
                         [](const Flags& x, RunConfig& r) { r.suite = x.suite; });
  f.setters.emplace_back(verify->add_option("--tolerance", f.tolerance, "numeric vs closed-form E^2 tolerance"),
                         [](const Flags& x, RunConfig& r) { r.tolerance = x.tolerance; });

  auto* nonrel = app.add_subcommand("nonrel", "non-relativistic limit sweep over c");
  add_model_options(nonrel, f);
  f.setters.emplace_back(nonrel->add_option("--c-list", f.c_list, "increasing speeds of light")->delimiter(','),
                         [](const Flags& x, RunConfig& r) { r.c_list = x.c_list; });

  auto* ajc = app.add_subcommand("ajc", "anti-Jaynes-Cummings block spectrum");
  add_model_options(ajc, f);
  f.setters.emplace_back(ajc->add_option("--delta", f.delta, "ladder scale (default 4 m omega or 4 m a)"),
                         [](const Flags& x, RunConfig& r) { r.delta = x.delta; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : relqosc::cli::usage_error;
  }

  RunConfig cfg;
  try {
    apply(f, cfg);
  } catch (const relqosc::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return relqosc::cli::usage_error;
  }

  using namespace relqosc::cli;
  if (spectrum->parsed()) return cmd_spectrum(cfg, std::cout, std::cerr);
  if (wave->parsed()) return cmd_wavefunction(cfg, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(cfg, std::cout, std::cerr);
  if (nonrel->parsed()) return cmd_nonrel(cfg, std::cout, std::cerr);
  return cmd_ajc(cfg, std::cout, std::cerr);
}
