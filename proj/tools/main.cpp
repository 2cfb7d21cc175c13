// Command-line front end: region, spectrum, resolvent, decay, verify, sweep.
// Exit codes: 0 pass, 1 check or numerical failure, 2 invalid input.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "cattaneo/commands.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/run_config.hpp"
#include "cattaneo/version.hpp"

namespace {

// Raw flag values; only the ones actually given override the base config.
struct Flags {
  std::optional<double> alpha, beta, gamma, m, sigma, tau;
  std::optional<std::string> spectrum, preset, config, out;
  std::optional<std::size_t> modes, s_points, t_points;
  std::optional<double> s_lo, s_hi, t_lo, t_hi, window_lo, window_hi;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool grid = false;
  std::string alpha_range = "0.6:1:5", beta_range = "0:0.2:5", gamma_range = "0.5:0.5:1";
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--alpha", f.alpha, "coupling exponent in [0, 1]");
  cmd.add_option("--beta", f.beta, "thermal damping exponent in [0, 1]");
  cmd.add_option("--gamma", f.gamma, "inertia exponent in (0, 1]");
  cmd.add_option("--m", f.m, "inertia coefficient >= 0");
  cmd.add_option("--sigma", f.sigma, "wave speed > 0");
  cmd.add_option("--tau", f.tau, "relaxation time > 0");
  cmd.add_option("--spectrum", f.spectrum, "biharmonic1d | laplace1d | powerlaw:c:p | geometric:lo:hi | list:FILE");
  cmd.add_option("--modes", f.modes, "number of modes");
  cmd.add_option("--s-lo", f.s_lo, "lowest frequency of the s grid");
  cmd.add_option("--s-hi", f.s_hi, "highest frequency of the s grid");
  cmd.add_option("--s-points", f.s_points, "points of the s grid (default 48)");
  cmd.add_option("--t-lo", f.t_lo, "earliest time of the t grid");
  cmd.add_option("--t-hi", f.t_hi, "latest time of the t grid");
  cmd.add_option("--t-points", f.t_points, "points of the t grid (default 64)");
  cmd.add_option("--window-lo", f.window_lo, "lower end of a manual fit window");
  cmd.add_option("--window-hi", f.window_hi, "upper end of a manual fit window");
  cmd.add_option("--seed", f.seed, "random seed");
  cmd.add_option("--out", f.out, "output directory");
  cmd.add_option("--preset", f.preset, "biharmonic-hinged-m1 | biharmonic-hinged-m0");
  cmd.add_option("--config", f.config, "JSON run configuration");
  cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

std::optional<cattaneo::GridSpec> grid_from(const std::optional<double>& lo, const std::optional<double>& hi,
                                            const std::optional<std::size_t>& points, std::size_t default_points,
                                            const char* what) {
  if (!lo && !hi && !points) return std::nullopt;
  if (!lo || !hi) throw cattaneo::InvalidParameters(std::string(what) + " grid needs both ends");
  return cattaneo::GridSpec{*lo, *hi, points.value_or(default_points), true};
}

cattaneo::RunConfig build_config(const Flags& f) {
  cattaneo::RunConfig c;
  if (f.config) {
    c = cattaneo::load_config(*f.config);
  } else if (f.preset) {
    c = cattaneo::preset_config(*f.preset);
  }
  auto& p = c.parameters;
  if (f.alpha) p.alpha = *f.alpha;
  if (f.beta) p.beta = *f.beta;
  if (f.gamma) p.gamma = *f.gamma;
  if (f.m) p.m = *f.m;
  if (f.sigma) p.sigma = *f.sigma;
  if (f.tau) p.tau = *f.tau;
  if (f.spectrum) {
    c.spectrum_text = *f.spectrum;
    c.spectrum = cattaneo::parse_spectrum(*f.spectrum);
  }
  if (f.modes) c.modes = *f.modes;
  if (auto g = grid_from(f.s_lo, f.s_hi, f.s_points, 48, "s")) c.s_grid = g;
  if (auto g = grid_from(f.t_lo, f.t_hi, f.t_points, 64, "t")) c.t_grid = g;
  if (f.window_lo || f.window_hi) {
    if (!f.window_lo || !f.window_hi) throw cattaneo::InvalidParameters("fit window needs both ends");
    c.fit_window = cattaneo::FitWindow{*f.window_lo, *f.window_hi};
  }
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.threads) c.threads = *f.threads;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of thermoelastic systems with Cattaneo heat conduction"};
  app.set_version_flag("--version", std::string(cattaneo::kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* region = app.add_subcommand("region", "classify a parameter point and print its exponents");
  auto* spectrum = app.add_subcommand("spectrum", "roots and branch predictions per mode");
  auto* resolvent = app.add_subcommand("resolvent", "resolvent norm scan and exponent fits");
  auto* decay = app.add_subcommand("decay", "semigroup decay envelope and exponent fit");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  auto* sweep = app.add_subcommand("sweep", "fitted decay exponents over an (alpha, beta, gamma) grid");
  for (auto* cmd : {region, spectrum, resolvent, decay, verify, sweep}) add_common(*cmd, f);
  region->add_flag("--grid", f.grid, "also write region_grid.csv");
  sweep->add_option("--alpha-range", f.alpha_range, "lo:hi:n")->capture_default_str();
  sweep->add_option("--beta-range", f.beta_range, "lo:hi:n")->capture_default_str();
  sweep->add_option("--gamma-range", f.gamma_range, "lo:hi:n")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const cattaneo::RunConfig config = build_config(f);
    if (region->parsed()) return cattaneo::cmd_region(config, f.grid, std::cout, std::cerr);
    if (spectrum->parsed()) return cattaneo::cmd_spectrum(config, std::cout, std::cerr);
    if (resolvent->parsed()) return cattaneo::cmd_resolvent(config, std::cout, std::cerr);
    if (decay->parsed()) return cattaneo::cmd_decay(config, std::cout, std::cerr);
    if (verify->parsed()) return cattaneo::cmd_verify(config, std::cout, std::cerr);
    const cattaneo::SweepRanges ranges{cattaneo::SweepAxis::parse(f.alpha_range),
                                       cattaneo::SweepAxis::parse(f.beta_range),
                                       cattaneo::SweepAxis::parse(f.gamma_range)};
    return cattaneo::cmd_sweep(config, ranges, std::cout, std::cerr);
  } catch (const cattaneo::InvalidParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cattaneo::UnsupportedNormalization& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
