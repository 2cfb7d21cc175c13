#include "cattaneo/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cattaneo/acceptance.hpp"
#include "cattaneo/analysis.hpp"
#include "cattaneo/asymptotics.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/quartic.hpp"
#include "cattaneo/report.hpp"

namespace cattaneo {
namespace {

std::optional<DecayExponents> exponents_of(const Parameters& p) {
  if (!classify_region(p).inside()) return std::nullopt;
  return decay_exponents(p);
}

RunManifest start_manifest(const RunConfig& config) {
  RunManifest m;
  m.config = to_json(config);
  m.exponents = exponents_of(config.parameters);
  return m;
}

// Attaches the data files, writes manifest.json and maps the checks to an exit code.
int finish(RunDirectory& dir, RunManifest& m) {
  m.files = dir.files();
  dir.write("manifest.json", m.render());
  return m.all_pass() ? 0 : 1;
}

CheckRecord relative_check(std::string name, double measured, double expected, double tolerance) {
  const double err = std::abs(measured - expected) / std::abs(expected);
  return {std::move(name), err, tolerance, err <= tolerance};
}

void print_checks(const RunManifest& m, std::ostream& out) {
  for (const auto& f : m.fits) {
    out << "fit " << f.kind << ": slope " << format_number(f.slope) << ", r2 " << format_number(f.r2) << ", window ["
        << format_number(f.window.lo) << ", " << format_number(f.window.hi) << "]\n";
  }
  for (const auto& c : m.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << format_number(c.measured) << " (tolerance "
        << format_number(c.tolerance) << ")\n";
  }
}

void add_scan_rows(CsvTable& table, const ScanResult& scan, std::span<const double> modes) {
  for (std::size_t i = 0; i < scan.abscissae.size(); ++i) {
    table.add_row({format_number(scan.abscissae[i]), format_number(scan.values[i]), format_number(modes[scan.argmax[i]])});
  }
}

// Fits `scan` over `window`, or the automatic window when unset. A refused
// fit is reported on `err` and yields nothing.
std::optional<FitResult> try_fit(const ScanResult& scan, const std::optional<FitWindow>& window, const char* kind,
                                 std::ostream& err) {
  try {
    return fit_powerlaw(scan, window ? *window : auto_window(scan));
  } catch (const FitRefused& e) {
    err << "warning: " << kind << " fit refused: " << e.what() << "\n";
    return std::nullopt;
  }
}

Complex smallest_root(const RootSet& r) {
  return *std::min_element(r.roots.begin(), r.roots.end(),
                           [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
}

ScanResult slice(const ScanResult& s, std::size_t begin, std::size_t end) {
  ScanResult out;
  out.abscissae.assign(s.abscissae.begin() + begin, s.abscissae.begin() + end);
  out.values.assign(s.values.begin() + begin, s.values.begin() + end);
  out.argmax.assign(s.argmax.begin() + begin, s.argmax.begin() + end);
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidParameters(std::string(what) + ": not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

int cmd_region(const RunConfig& config, bool grid, std::ostream& out, std::ostream&) {
  config.validate();
  const Parameters& p = config.parameters;
  const Region region = classify_region(p);
  out << "region: " << to_string(region.tag) << "\n";
  out << "margin: " << format_number(region.margin) << "\n";
  if (region.inside()) {
    const DecayExponents e = decay_exponents(p);
    out << "l: " << format_number(e.l) << "\nk: " << format_number(e.k) << "\na: " << format_number(e.a)
        << "\ndecay_exponent: " << format_number(e.decay_exponent) << "\nsharp: " << to_string(e.sharp) << "\n";
  }
  if (!grid) return 0;

  CsvTable table({"alpha", "beta", "gamma", "m", "region", "margin"});
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      Parameters q = p;
      q.alpha = i / 100.0;
      q.beta = j / 100.0;
      const Region r = classify_region(q);
      table.add_row({format_number(q.alpha), format_number(q.beta), format_number(q.gamma), format_number(q.m),
                     std::string(to_string(r.tag)), format_number(r.margin)});
    }
  }
  RunDirectory dir(config.out);
  dir.write("region_grid.csv", table.render());
  RunManifest m = start_manifest(config);
  return finish(dir, m);
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const Parameters& p = config.parameters;
  const auto modes = spectrum(config.spectrum, config.modes);
  const auto exponents = exponents_of(p);
  const bool predict = has_branch_formulas(p) && exponents.has_value();
  if (!predict) {
    err << "warning: branch predictions need sigma = 2, tau = 1, m in {0, 1} and a point inside the region; "
           "prediction columns are left empty\n";
  }

  std::vector<RootSet> roots(modes.size());
  parallel_for(modes.size(), config.threads, [&](std::size_t n) { roots[n] = solve_quartic(char_coeffs(p, modes[n])); });

  CsvTable table({"mu", "branch", "re_lambda", "im_lambda", "pred_re", "pred_im", "rel_err_re", "rel_err_im",
                  "residual", "sharpness_product"});
  double worst = 0.0;
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const RootSet& r = roots[n];
    worst = std::max(worst, r.max_residual());
    const auto sharpness = [&](Complex z) {
      return exponents && z.imag() != 0.0 ? format_number(sharpness_product(z, exponents->k)) : std::string();
    };
    if (predict) {
      const BranchReport rep = match_branches(r, predicted_branches(p, modes[n]), modes[n], exponents->k);
      for (const auto& b : rep.branches) {
        table.add_row({format_number(modes[n]), std::to_string(b.index), format_number(b.computed.real()),
                       format_number(b.computed.imag()), format_number(b.predicted.real()),
                       format_number(b.predicted.imag()), format_number(b.rel_err_re), format_number(b.rel_err_im),
                       format_number(r.residuals[b.root]), sharpness(b.computed)});
      }
    } else {
      for (std::size_t j = 0; j < 4; ++j) {
        table.add_row({format_number(modes[n]), std::to_string(j + 1), format_number(r.roots[j].real()),
                       format_number(r.roots[j].imag()), "", "", "", "", format_number(r.residuals[j]),
                       sharpness(r.roots[j])});
      }
    }
  }

  RunDirectory dir(config.out);
  dir.write("spectrum.csv", table.render());
  RunManifest m = start_manifest(config);
  m.checks.push_back({"spectrum_max_normalized_residual", worst, 1e-9, worst <= 1e-9});
  print_checks(m, out);
  return finish(dir, m);
}

int cmd_resolvent(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const Parameters& p = config.parameters;
  const auto modes = spectrum(config.spectrum, config.modes);
  const auto spectra = mode_spectra(p, modes, config.threads);
  const auto exponents = exponents_of(p);
  RunManifest m = start_manifest(config);

  ScanResult scan;
  std::optional<FitResult> zero_fit, infinity_fit;
  if (config.s_grid) {
    const auto grid = config.s_grid->values();
    scan = scan_resolvent(spectra, grid, config.threads);
    if (auto f = try_fit(scan, config.fit_window, "resolvent", err)) {
      m.fits.push_back({"resolvent", f->slope, f->r_squared, f->window});
      // A window entirely on one side of s = 1 is compared with that end's exponent.
      if (exponents && f->window.hi <= 0.1) zero_fit = f;
      if (exponents && f->window.lo >= 1.0) infinity_fit = f;
    }
  } else {
    // |lambda3(mu_max)| is the smallest root modulus of the top mode.
    const double lo = 10.0 * std::abs(smallest_root(spectra.back().roots));
    ScanResult low;
    if (lo < 0.1) {
      low = scan_resolvent(spectra, geometric_grid(lo, 0.1, 48), config.threads);
      if (auto f = try_fit(low, FitWindow{low.abscissae.front(), low.abscissae.back()}, "resolvent_zero", err)) {
        m.fits.push_back({"resolvent_zero", f->slope, f->r_squared, f->window});
        zero_fit = f;
      }
    } else {
      err << "warning: low-frequency window is empty (10 |lambda3(mu_max)| >= 0.1)\n";
    }
    ScanResult peaks = scan_resolvent_peaks(spectra, config.threads);
    const double floor = low.abscissae.empty() ? 0.0 : low.abscissae.back();
    const auto first =
        std::upper_bound(peaks.abscissae.begin(), peaks.abscissae.end(), floor) - peaks.abscissae.begin();
    peaks = slice(peaks, static_cast<std::size_t>(first), peaks.abscissae.size());
    if (peaks.abscissae.size() >= 8) {
      if (auto f = try_fit(peaks, FitWindow{peaks.abscissae.front(), peaks.abscissae.back()}, "resolvent_infinity",
                           err)) {
        m.fits.push_back({"resolvent_infinity", f->slope, f->r_squared, f->window});
        infinity_fit = f;
      }
    } else {
      err << "warning: fewer than 8 resonance peaks; no high-frequency fit\n";
    }
    scan = low;
    scan.abscissae.insert(scan.abscissae.end(), peaks.abscissae.begin(), peaks.abscissae.end());
    scan.values.insert(scan.values.end(), peaks.values.begin(), peaks.values.end());
    scan.argmax.insert(scan.argmax.end(), peaks.argmax.begin(), peaks.argmax.end());
  }
  if (exponents && zero_fit) {
    m.checks.push_back(relative_check("resolvent_zero_exponent_rel_err", -zero_fit->slope, exponents->l, 0.1));
  }
  if (exponents && infinity_fit) {
    m.checks.push_back(relative_check("resolvent_infinity_exponent_rel_err", infinity_fit->slope, exponents->k, 0.1));
  }

  CsvTable table({"s", "norm", "argmax_mu"});
  add_scan_rows(table, scan, modes);
  RunDirectory dir(config.out);
  dir.write("resolvent.csv", table.render());
  print_checks(m, out);
  return finish(dir, m);
}

int cmd_decay(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const Parameters& p = config.parameters;
  const auto modes = spectrum(config.spectrum, config.modes);
  const auto spectra = mode_spectra(p, modes, config.threads);
  const auto exponents = exponents_of(p);
  RunManifest m = start_manifest(config);

  std::vector<double> grid;
  if (config.t_grid) {
    grid = config.t_grid->values();
  } else {
    const FitWindow w = default_decay_window(spectra);
    grid = geometric_grid(w.lo, w.hi, 64);
  }
  const ScanResult env = decay_envelope(spectra, grid, config.threads);
  if (auto f = try_fit(env, config.fit_window, "decay", err)) {
    m.fits.push_back({"decay", f->slope, f->r_squared, f->window});
    if (exponents) {
      m.checks.push_back(
          relative_check("decay_exponent_rel_err", -f->slope, exponents->decay_exponent, 0.1));
    }
  }

  CsvTable table({"t", "norm", "argmax_mu"});
  add_scan_rows(table, env, modes);
  RunDirectory dir(config.out);
  dir.write("decay.csv", table.render());
  print_checks(m, out);
  return finish(dir, m);
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  config.validate();
  const AcceptanceOptions options{config.seed, config.threads};
  const nlohmann::json echo = to_json(config);
  auto results = run_criteria(options);
  for (const auto& r : results) out << format_line(r) << "\n" << std::flush;
  results.push_back(check_reproducibility(options, echo, results));
  out << format_line(results.back()) << "\n";

  CsvTable table({"criterion", "check", "measured", "tolerance", "pass"});
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      table.add_row({std::to_string(r.id), c.name, format_number(c.measured), format_number(c.tolerance),
                     c.pass ? "true" : "false"});
    }
  }
  const bool pass = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });

  RunDirectory dir(config.out);
  dir.write("criteria.csv", table.render());
  RunManifest m = acceptance_manifest(echo, results);
  m.exponents = exponents_of(config.parameters);
  m.files = dir.files();
  dir.write("manifest.json", m.render());
  nlohmann::json report{{"version", std::string(kVersion)}, {"config", echo}, {"pass", pass},
                        {"criteria", report_json(results)}};
  dir.write("report.json", report.dump(2) + "\n");
  out << (pass ? "all criteria passed\n" : "some criteria failed\n");
  return pass ? 0 : 1;
}

SweepAxis SweepAxis::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw InvalidParameters("sweep range must be lo:hi:n, got '" + std::string(text) + "'");
  SweepAxis a;
  a.lo = parse_double(parts[0], "sweep range lo");
  a.hi = parse_double(parts[1], "sweep range hi");
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || n == 0) {
    throw InvalidParameters("sweep range point count must be a positive integer");
  }
  a.points = n;
  if (n == 1 ? a.lo != a.hi : !(a.lo < a.hi)) {
    throw InvalidParameters("sweep range needs lo < hi (or lo == hi with n = 1)");
  }
  return a;
}

double SweepAxis::at(std::size_t i) const {
  if (points == 1) return lo;
  if (i + 1 == points) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

int cmd_sweep(const RunConfig& config, const SweepRanges& ranges, std::ostream& out, std::ostream& err) {
  config.validate();
  const auto modes = spectrum(config.spectrum, config.modes);
  const std::size_t n_gamma = config.parameters.inertial() ? ranges.gamma.points : 1;

  CsvTable table({"alpha", "beta", "gamma", "m", "region", "k", "a", "pred_exponent", "fitted_exponent", "sharp_flag"});
  double worst = 0.0;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < ranges.alpha.points; ++i) {
    for (std::size_t j = 0; j < ranges.beta.points; ++j) {
      for (std::size_t g = 0; g < n_gamma; ++g) {
        Parameters q = config.parameters;
        q.alpha = ranges.alpha.at(i);
        q.beta = ranges.beta.at(j);
        q.gamma = ranges.gamma.at(g);
        validate(q);
        const Region region = classify_region(q);
        std::vector<std::string> row{format_number(q.alpha), format_number(q.beta), format_number(q.gamma),
                                     format_number(q.m), std::string(to_string(region.tag))};
        if (!region.inside()) {
          row.resize(10);
          table.add_row(std::move(row));
          continue;
        }
        const DecayExponents e = decay_exponents(q);
        const auto spectra = mode_spectra(q, modes, config.threads);
        const FitWindow w = default_decay_window(spectra);
        const ScanResult env = decay_envelope(spectra, geometric_grid(w.lo, w.hi, 64), config.threads);
        std::string fitted;
        if (auto f = try_fit(env, std::nullopt, "decay", err)) {
          fitted = format_number(-f->slope);
          if (e.sharp == Sharpness::Sharp) {
            worst = std::max(worst, std::abs(-f->slope - e.decay_exponent) / e.decay_exponent);
            ++compared;
          }
        }
        row.insert(row.end(), {format_number(e.k), format_number(e.a), format_number(e.decay_exponent), fitted,
                               std::string(to_string(e.sharp))});
        table.add_row(std::move(row));
      }
    }
  }

  RunDirectory dir(config.out);
  dir.write("sweep.csv", table.render());
  RunManifest m = start_manifest(config);
  if (compared > 0) m.checks.push_back({"sweep_max_sharp_exponent_rel_err", worst, 0.1, worst <= 0.1});
  out << "sweep: " << table.rows() << " points, " << compared << " sharp fits compared\n";
  print_checks(m, out);
  return finish(dir, m);
}

}  // namespace cattaneo
