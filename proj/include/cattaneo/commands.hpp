#pragma once

#include <cstddef>
#include <ostream>
#include <string_view>

#include "cattaneo/run_config.hpp"

namespace cattaneo {

// Subcommands of the command-line tool. Each writes its files and a
// manifest.json into config.out, prints a summary to `out` and warnings to
// `err`, and returns 0 when every recorded check passes and 1 otherwise.
// Invalid input surfaces as InvalidParameters (exit code 2 in the tool).

// Region and exponents as text. With `grid`, also region_grid.csv: a
// 101 x 101 raster of the (alpha, beta) unit square at the configured gamma, m.
int cmd_region(const RunConfig& config, bool grid, std::ostream& out, std::ostream& err);

// spectrum.csv: four rows per mode with roots, branch predictions and errors.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);

// resolvent.csv and power-law fits of the resolvent norm. Without an s grid
// the scan is the low window [10 |lambda3(mu_max)|, 0.1] followed by every
// resonance peak.
int cmd_resolvent(const RunConfig& config, std::ostream& out, std::ostream& err);

// decay.csv and the fitted decay exponent.
int cmd_decay(const RunConfig& config, std::ostream& out, std::ostream& err);

// The full acceptance suite at config.seed and config.threads:
// criteria.csv, manifest.json (deterministic) and report.json (with timings).
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 1;

  // "lo:hi:n"; n = 1 requires lo == hi. Throws InvalidParameters.
  static SweepAxis parse(std::string_view text);
  [[nodiscard]] double at(std::size_t i) const;
};

struct SweepRanges {
  SweepAxis alpha{0.6, 1.0, 5};
  SweepAxis beta{0.0, 0.2, 5};
  SweepAxis gamma{0.5, 0.5, 1};
};

// sweep.csv over the (alpha, beta, gamma) grid with the configured m, sigma,
// tau and spectrum. Points outside the region keep only their region tag.
// With m = 0 only the first gamma is used.
int cmd_sweep(const RunConfig& config, const SweepRanges& ranges, std::ostream& out, std::ostream& err);

}  // namespace cattaneo
