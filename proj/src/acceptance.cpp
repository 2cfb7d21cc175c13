#include "cattaneo/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "cattaneo/analysis.hpp"
#include "cattaneo/asymptotics.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/quartic.hpp"
#include "cattaneo/run_config.hpp"

namespace cattaneo {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::mt19937_64 rng_for(const AcceptanceOptions& o, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random point of Q (inertial) or Q* with moderate σ, τ, m.
Parameters sample_region(std::mt19937_64& rng, bool inertial) {
  Parameters p;
  do {
    p.alpha = uniform(rng, 0.0, 1.0);
    p.beta = uniform(rng, 0.0, 1.0);
  } while (!(p.alpha > (p.beta + 1.0) / 2.0));
  p.gamma = 1.0 - uniform(rng, 0.0, 1.0);  // (0, 1]
  p.m = inertial ? uniform(rng, 0.1, 3.0) : 0.0;
  p.sigma = uniform(rng, 0.5, 4.0);
  p.tau = uniform(rng, 0.1, 4.0);
  return p;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::pow(10.0, uniform(rng, std::log10(lo), std::log10(hi)));
}

CheckRecord at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

CheckRecord at_least(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured >= tolerance};
}

CheckRecord below(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured < tolerance};
}

struct Preset {
  const char* tag;
  Parameters parameters;
};

std::array<Preset, 2> presets() {
  return {{{"m1", preset_config("biharmonic-hinged-m1").parameters},
           {"m0", preset_config("biharmonic-hinged-m0").parameters}}};
}

// 200 modes spread geometrically over [1e2, 1e10].
std::vector<double> geometric_modes() { return spectrum(SpectrumModel::geometric(1e2, 1e10), 200); }

struct CoefficientSample {
  Parameters p;
  double mu;
};

std::vector<CoefficientSample> coefficient_samples(const AcceptanceOptions& o) {
  auto rng = rng_for(o, 1);
  std::vector<CoefficientSample> s(1000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].p = sample_region(rng, i % 2 == 0);
    s[i].mu = log_uniform(rng, 1.0, 1e10);
  }
  return s;
}

}  // namespace

bool CriterionResult::numeric_pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

bool CriterionResult::within_budget() const {
  return std::all_of(timings.begin(), timings.end(), [](const auto& t) { return t.seconds < t.budget; });
}

CriterionResult check_characteristic_coefficients(const AcceptanceOptions& o) {
  CriterionResult r{1, "characteristic polynomial of M matches the quartic", {}, {}, {}};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& s : coefficient_samples(o)) {
    const ModalGenerator g = modal_generator(s.p, s.mu);
    const QuarticCoeffs c = char_coeffs(s.p, s.mu);
    const auto monic = characteristic_polynomial(g.entries);
    const DoubleDouble scale = DoubleDouble(s.p.tau) * DoubleDouble(g.inertia);
    worst = std::max(worst, std::abs(scale.value() - c.c4()) / c.c4());
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = (monic[j] * scale).value();
      worst = std::max(worst, std::abs(v - c.coefficient(j)) / c.coefficient(j));
    }
  }
  r.timings.push_back({"all", seconds_since(t0), 2.0});
  r.checks.push_back(at_most("c1_coefficient_rel_err", worst, 1e-10));
  return r;
}

CriterionResult check_root_quality(const AcceptanceOptions& o) {
  CriterionResult r{2, "quartic roots: residuals, Vieta, agreement with eig(M)", {}, {}, {}};
  const auto t0 = Clock::now();
  double residual = 0.0, vieta = 0.0, agreement = 0.0;
  for (const auto& s : coefficient_samples(o)) {
    const QuarticCoeffs c = char_coeffs(s.p, s.mu);
    const RootSet roots = solve_quartic(c);
    residual = std::max(residual, roots.max_residual());
    for (double v : vieta_residuals(c, roots)) vieta = std::max(vieta, v);
    const auto eig = modal_eigenvalues(modal_generator(s.p, s.mu));
    std::array<std::array<double, 4>, 4> cost{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) cost[i][j] = std::abs(roots.roots[i] - eig[j]) / std::abs(roots.roots[i]);
    const Assignment a = best_assignment(cost);
    for (std::size_t i = 0; i < 4; ++i) agreement = std::max(agreement, cost[i][a.target[i]]);
  }
  r.timings.push_back({"all", seconds_since(t0), 5.0});
  r.checks.push_back(at_most("c2_max_normalized_residual", residual, 1e-9));
  r.checks.push_back(at_most("c2_max_vieta_residual", vieta, 1e-9));
  r.checks.push_back(at_most("c2_max_eig_rel_diff", agreement, 1e-8));
  return r;
}

CriterionResult check_dissipation(const AcceptanceOptions& o) {
  CriterionResult r{3, "dissipation identity Re<MU,U>_W = -|q|^2", {}, {}, {}};
  const auto t0 = Clock::now();
  auto rng = rng_for(o, 3);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Parameters p = sample_region(rng, i % 2 == 0);
    const ModalGenerator g = modal_generator(p, log_uniform(rng, 1.0, 1e10));
    // Unit-scale weighted components, so every pairing contributes.
    Vec4<Complex> x;
    for (std::size_t k = 0; k < 4; ++k) x[k] = Complex(normal(rng), normal(rng)) / g.weight[k];
    const ModalState s = ModalState::from_vector(x);
    const double n = weighted_norm(g, s);
    worst = std::max(worst, std::abs(dissipation_residual(g, s)) / (n * n));
  }
  r.timings.push_back({"all", seconds_since(t0), 1.0});
  r.checks.push_back(at_most("c3_max_residual_over_norm_sq", worst, 1e-12));
  return r;
}

namespace {

CriterionResult branch_criterion(int id, const char* title, const Parameters& p, const char* tag) {
  CriterionResult r{id, title, {}, {}, {}};
  const auto t0 = Clock::now();
  const double k = decay_exponents(p).k;
  const std::array<double, 4> mus{1e4, 1e6, 1e8, 1e10};
  std::array<double, 4> err_re{}, err_im{};
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const RootSet roots = solve_quartic(char_coeffs(p, mus[i]));
    const BranchReport rep = match_branches(roots, predicted_branches(p, mus[i]), mus[i], k);
    err_re[i] = rep.branches[0].rel_err_re;
    err_im[i] = rep.branches[0].rel_err_im;
  }
  double ratio = 0.0;
  for (std::size_t i = 1; i < mus.size(); ++i) {
    ratio = std::max({ratio, err_re[i] / err_re[i - 1], err_im[i] / err_im[i - 1]});
  }
  r.timings.push_back({"all", seconds_since(t0), 1.0});
  const std::string prefix = std::string("c") + std::to_string(id) + "_" + tag;
  r.checks.push_back(at_most(prefix + "_im_rel_err_mu1e8", err_im[2], 1e-3));
  r.checks.push_back(at_most(prefix + "_re_rel_err_mu1e8", err_re[2], 0.05));
  r.checks.push_back(below(prefix + "_max_error_ratio_per_decade_pair", ratio, 1.0));
  return r;
}

}  // namespace

CriterionResult check_branches_inertial(const AcceptanceOptions&) {
  return branch_criterion(4, "m=1 branch asymptotics", presets()[0].parameters, "m1");
}

CriterionResult check_branches_non_inertial(const AcceptanceOptions&) {
  return branch_criterion(5, "m=0 branch asymptotics", presets()[1].parameters, "m0");
}

CriterionResult check_sharpness(const AcceptanceOptions&) {
  CriterionResult r{6, "sharpness product |Re l1| |Im l1|^k at mu=1e10", {}, {}, {}};
  const auto t0 = Clock::now();
  for (const auto& preset : presets()) {
    const Parameters& p = preset.parameters;
    const double k = decay_exponents(p).k;
    const RootSet roots = solve_quartic(char_coeffs(p, 1e10));
    const BranchReport rep = match_branches(roots, predicted_branches(p, 1e10), 1e10, k);
    r.checks.push_back(at_most(std::string("c6_") + preset.tag + "_abs_dev_from_half",
                               std::abs(rep.branches[0].sharpness - 0.5), 0.025));
  }
  r.timings.push_back({"all", seconds_since(t0), 1.0});
  return r;
}

CriterionResult check_resolvent_infinity(const AcceptanceOptions& o) {
  CriterionResult r{7, "resolvent growth exponent at infinity", {}, {}, {}};
  const auto modes = geometric_modes();
  for (const auto& preset : presets()) {
    const auto t0 = Clock::now();
    const Parameters& p = preset.parameters;
    const auto spectra = mode_spectra(p, modes, o.threads);
    const ScanResult scan = scan_resolvent_peaks(spectra, o.threads);
    const FitWindow all{scan.abscissae.front(), scan.abscissae.back()};
    const std::string prefix = std::string("c7_") + preset.tag;
    try {
      const FitResult f = fit_powerlaw(scan, all);
      r.fits.push_back({prefix + "_resolvent_infinity", f.slope, f.r_squared, f.window});
      r.checks.push_back(at_most(prefix + "_k_abs_err", std::abs(f.slope - decay_exponents(p).k), 0.2));
      r.checks.push_back(at_least(prefix + "_r2", f.r_squared, 0.98));
    } catch (const FitRefused& e) {
      r.checks.push_back(at_most(prefix + "_k_abs_err", std::abs(e.slope() - decay_exponents(p).k), 0.2));
      r.checks.push_back(at_least(prefix + "_r2", e.r_squared(), 0.98));
    }
    r.timings.push_back({preset.tag, seconds_since(t0), 10.0});
  }
  return r;
}

CriterionResult check_resolvent_zero(const AcceptanceOptions& o) {
  CriterionResult r{8, "resolvent near zero: |s| * norm bounded", {}, {}, {}};
  const auto modes = geometric_modes();
  for (const auto& preset : presets()) {
    const auto t0 = Clock::now();
    const auto spectra = mode_spectra(preset.parameters, modes, o.threads);
    const double lo = 10.0 * std::abs(spectra.back().roots.roots[2]);  // 10·|λ3(μ_max)|
    const auto grid = geometric_grid(lo, 0.1, 48);
    const ScanResult scan = scan_resolvent(spectra, grid, o.threads);
    double low = std::numeric_limits<double>::infinity(), high = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = grid[i] * scan.values[i];
      low = std::min(low, v);
      high = std::max(high, v);
    }
    const std::string prefix = std::string("c8_") + preset.tag;
    r.checks.push_back(at_least(prefix + "_min_s_times_norm", low, 0.9));
    r.checks.push_back(at_most(prefix + "_max_s_times_norm", high, 10.0));
    r.timings.push_back({preset.tag, seconds_since(t0), 10.0});
  }
  return r;
}

CriterionResult check_decay_rate(const AcceptanceOptions& o) {
  CriterionResult r{9, "semigroup decay rate on 200 hinged-plate modes", {}, {}, {}};
  for (const auto& preset : presets()) {
    const auto t0 = Clock::now();
    const Parameters& p = preset.parameters;
    const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 200);
    const auto spectra = mode_spectra(p, modes, o.threads);
    const FitWindow range = default_decay_window(spectra);
    const auto grid = geometric_grid(range.lo, range.hi, 64);
    const ScanResult env = decay_envelope(spectra, grid, o.threads);
    const std::string prefix = std::string("c9_") + preset.tag;
    const double expected = -decay_exponents(p).decay_exponent;
    try {
      const FitResult f = fit_powerlaw(env, auto_window(env));
      r.fits.push_back({prefix + "_decay", f.slope, f.r_squared, f.window});
      r.checks.push_back(at_most(prefix + "_slope_abs_err", std::abs(f.slope - expected), 0.05));
      r.checks.push_back(at_least(prefix + "_r2", f.r_squared, 0.98));
    } catch (const FitRefused& e) {
      r.checks.push_back(at_most(prefix + "_slope_abs_err", std::abs(e.slope() - expected), 0.05));
      r.checks.push_back(at_least(prefix + "_r2", e.r_squared(), 0.98));
    }
    r.timings.push_back({preset.tag, seconds_since(t0), 60.0});
  }
  return r;
}

CriterionResult check_static_inverse(const AcceptanceOptions&) {
  CriterionResult r{10, "static inverse norm grows like mu^(2a-b-1)", {}, {}, {}};
  const auto t0 = Clock::now();
  const Parameters p = presets()[0].parameters;
  const auto mus = geometric_grid(1e4, 1e10, 13);
  ScanResult s;
  s.abscissae = mus;
  int non_increasing = 0;
  for (double mu : mus) {
    s.values.push_back(static_inverse_norm(modal_generator(p, mu)));
    if (s.values.size() > 1 && !(s.values.back() > s.values[s.values.size() - 2])) ++non_increasing;
  }
  s.argmax.assign(mus.size(), 0);
  const double expected = 2.0 * p.alpha - p.beta - 1.0;
  double slope = 0.0;
  try {
    const FitResult f = fit_powerlaw(s, {mus.front(), mus.back()});
    slope = f.slope;
    r.fits.push_back({"c10_static_inverse", f.slope, f.r_squared, f.window});
  } catch (const FitRefused& e) {
    slope = e.slope();
  }
  r.timings.push_back({"all", seconds_since(t0), 2.0});
  r.checks.push_back(at_most("c10_slope_rel_err", std::abs(slope - expected) / expected, 0.05));
  r.checks.push_back(at_most("c10_non_increasing_steps", non_increasing, 0.0));
  return r;
}

CriterionResult check_interpolation(const AcceptanceOptions& o) {
  CriterionResult r{11, "moment interpolation inequality", {}, {}, {}};
  const auto t0 = Clock::now();
  auto rng = rng_for(o, 11);
  std::normal_distribution<double> normal;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10000; ++i) {
    const double re = uniform(rng, -1.0, 1.0);
    const double qe = re + uniform(rng, 0.01, 2.0);
    const double pe = uniform(rng, re, qe);
    const std::array<double, 2> modes{log_uniform(rng, 1.0, 1e6), log_uniform(rng, 1.0, 1e6)};
    const std::array<Complex, 2> x{Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng))};
    const double margin = interpolation_check(pe, qe, re, modes, x);
    const double lhs_plus_margin = margin + [&] {
      double acc = 0.0;
      for (std::size_t n = 0; n < 2; ++n) acc += std::pow(modes[n], 2.0 * pe) * std::norm(x[n]);
      return std::sqrt(acc);
    }();
    worst = std::max(worst, -margin / lhs_plus_margin);
  }
  r.timings.push_back({"all", seconds_since(t0), 1.0});
  r.checks.push_back(at_most("c11_max_neg_margin_over_rhs", worst, 1e-12));
  return r;
}

CriterionResult check_contraction(const AcceptanceOptions& o) {
  CriterionResult r{12, "contraction ||exp(tM)||_W <= 1", {}, {}, {}};
  const auto t0 = Clock::now();
  auto rng = rng_for(o, 12);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2000; ++i) {
    const Parameters p = sample_region(rng, i % 2 == 0);
    const ModeSpectrum m = mode_spectrum(p, log_uniform(rng, 1.0, 1e10));
    for (double t : {0.0, log_uniform(rng, 1e-4, 1.0), log_uniform(rng, 1.0, 1e6)}) {
      worst = std::max(worst, semigroup_norm(m, t) - 1.0);
    }
  }
  r.timings.push_back({"all", seconds_since(t0), 5.0});
  r.checks.push_back(at_most("c12_max_norm_minus_one", worst, 1e-10));
  return r;
}

std::vector<CriterionResult> run_criteria(const AcceptanceOptions& o) {
  return {check_characteristic_coefficients(o),
          check_root_quality(o),
          check_dissipation(o),
          check_branches_inertial(o),
          check_branches_non_inertial(o),
          check_sharpness(o),
          check_resolvent_infinity(o),
          check_resolvent_zero(o),
          check_decay_rate(o),
          check_static_inverse(o),
          check_interpolation(o),
          check_contraction(o)};
}

RunManifest acceptance_manifest(const nlohmann::json& config, const std::vector<CriterionResult>& results) {
  RunManifest m;
  m.config = config;
  m.exponents = decay_exponents(presets()[0].parameters);
  for (const auto& r : results) {
    m.checks.insert(m.checks.end(), r.checks.begin(), r.checks.end());
    m.fits.insert(m.fits.end(), r.fits.begin(), r.fits.end());
  }
  return m;
}

CriterionResult check_reproducibility(const AcceptanceOptions& o, const nlohmann::json& config,
                                      const std::vector<CriterionResult>& first) {
  CriterionResult r{13, "manifest identical across thread counts", {}, {}, {}};
  double first_seconds = 0.0;
  for (const auto& c : first)
    for (const auto& t : c.timings) first_seconds += t.seconds;
  AcceptanceOptions other = o;
  other.threads = o.threads == 1 ? 2 : 1;
  const auto t0 = Clock::now();
  const auto second = run_criteria(other);
  const double elapsed = seconds_since(t0);
  const std::string a = sha256_hex(acceptance_manifest(config, first).render());
  const std::string b = sha256_hex(acceptance_manifest(config, second).render());
  r.checks.push_back(at_most("c13_manifest_checksum_mismatch", a == b ? 0.0 : 1.0, 0.0));
  r.timings.push_back({"rerun", elapsed, 2.0 * std::max(first_seconds, 1e-3)});
  return r;
}

std::string format_line(const CriterionResult& r) {
  std::string line = r.pass() ? "PASS" : "FAIL";
  char buf[160];
  std::snprintf(buf, sizeof buf, " [%2d] %s:", r.id, r.title.c_str());
  line += buf;
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, " %s=%.6g%s(tol %.3g)", c.name.c_str(), c.measured, c.pass ? "" : "!", c.tolerance);
    line += buf;
  }
  for (const auto& t : r.timings) {
    std::snprintf(buf, sizeof buf, " time[%s]=%.3fs%s/%.3gs", t.label.c_str(), t.seconds,
                  t.seconds < t.budget ? "" : "!", t.budget);
    line += buf;
  }
  return line;
}

nlohmann::json report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json item;
    item["id"] = r.id;
    item["title"] = r.title;
    item["pass"] = r.pass();
    item["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
      item["checks"].push_back({{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    item["runtime"] = nlohmann::json::array();
    for (const auto& t : r.timings) {
      item["runtime"].push_back({{"label", t.label}, {"seconds", t.seconds}, {"budget", t.budget}});
    }
    j.push_back(item);
  }
  return j;
}

}  // namespace cattaneo
