#include "cattaneo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace cattaneo {
namespace {

void require_increasing(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw InvalidParameters(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InvalidParameters(std::string(what) + " grid has a non-finite point");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidParameters(std::string(what) + " grid must be strictly increasing");
    }
  }
}

// V diag(d) V⁻¹
ComplexMatrix spectral_function(const ModeSpectrum& m, const Vec4<Complex>& d) {
  ComplexMatrix r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      Complex acc(0.0);
      for (std::size_t j = 0; j < 4; ++j) acc += m.vectors(i, j) * d[j] * m.inverse_vectors(j, k);
      r(i, k) = acc;
    }
  return r;
}

Complex exp_t(Complex lambda, double t) {
  if (t == 0.0) return 1.0;
  const double mag = std::exp(t * lambda.real());
  const double phase = t * lambda.imag();
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameters("time must be finite and >= 0");
}

FitResult least_squares(const ScanResult& scan, FitWindow window) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < scan.abscissae.size(); ++i) {
    const double x = scan.abscissae[i];
    if (x < window.lo || x > window.hi) continue;
    const double y = scan.values[i];
    if (!(x > 0.0) || !(y > 0.0)) throw InvalidParameters("power-law fit needs positive abscissae and values");
    lx.push_back(std::log10(x));
    ly.push_back(std::log10(y));
  }
  const std::size_t n = lx.size();
  if (n < 8) {
    throw InvalidParameters("power-law fit needs at least 8 points in the window, found " + std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InvalidParameters("power-law fit needs distinct abscissae");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.window = window;
  f.points = n;
  if (syy == 0.0) {
    f.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = ly[i] - (f.intercept + f.slope * lx[i]);
      ss_res += e * e;
    }
    f.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return f;
}

}  // namespace

double ModeSpectrum::slowest_rate() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : roots.roots) r = std::min(r, std::abs(z.real()));
  return r;
}

ModeSpectrum mode_spectrum(const Parameters& p, double mu) {
  ModeSpectrum m;
  m.generator = modal_generator(p, mu);
  m.roots = solve_quartic(char_coeffs(p, mu));
  const ModalGenerator& g = m.generator;
  const double sigma_mu = g.sigma * g.mu;
  const double sqrt_d = std::sqrt(g.inertia);
  const double sqrt_tau = std::sqrt(g.tau);
  bool finite = true;
  for (std::size_t j = 0; j < 4; ++j) {
    // M x = λ x with u = 1 gives v = λ, θ = (Dλ² + σμ)/μ^α and
    // q = −μ^(β/2) θ / (1 + τλ); the last denominator cancels near λ = −1/τ
    // and is formed from the double-double root.
    const Complex lambda = m.roots.roots[j];
    const Complex theta = (g.inertia * lambda * lambda + sigma_mu) / g.mu_alpha;
    const ComplexDD shifted = ComplexDD(Complex(1.0)) + m.roots.extended[j] * DoubleDouble(g.tau);
    const Complex q = -g.mu_beta_half * theta / shifted.value();
    Vec4<Complex> y{Complex(std::sqrt(sigma_mu)), sqrt_d * lambda, theta, sqrt_tau * q};
    double norm = 0.0;
    for (const auto& e : y) norm += std::norm(e);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < 4; ++i) {
      m.vectors(i, j) = y[i] / norm;
      finite = finite && std::isfinite(m.vectors(i, j).real()) && std::isfinite(m.vectors(i, j).imag());
    }
  }
  m.condition = std::numeric_limits<double>::infinity();
  if (finite) {
    try {
      m.inverse_vectors = inverse(m.vectors);
      m.condition = norm_1(m.vectors) * norm_1(m.inverse_vectors);
    } catch (const SingularMatrix&) {
    }
  }
  m.spectral = m.condition < kSpectralConditionLimit;
  return m;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<ModeSpectrum> mode_spectra(const Parameters& p, std::span<const double> modes, unsigned threads) {
  std::vector<ModeSpectrum> out(modes.size());
  parallel_for(modes.size(), threads, [&](std::size_t i) { out[i] = mode_spectrum(p, modes[i]); });
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) throw InvalidParameters("grid needs 0 < lo < hi");
  if (n < 2) throw InvalidParameters("grid needs at least 2 points");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

double resolvent_norm(const ModeSpectrum& m, double s) { return resolvent_norm(m, DoubleDouble(s)); }

double resolvent_norm(const ModeSpectrum& m, DoubleDouble s) {
  if (m.spectral) {
    Vec4<Complex> d;
    for (std::size_t j = 0; j < 4; ++j) {
      // is − λ_j with the imaginary difference formed in double-double, so a
      // resonant s = Im λ_j leaves exactly −Re λ_j.
      const ComplexDD& lam = m.roots.extended[j];
      const Complex gap((-lam.re).value(), (s - lam.im).value());
      d[j] = 1.0 / gap;
    }
    return largest_singular_value(spectral_function(m, d));
  }
  ComplexMatrix shifted = -1.0 * to_complex(m.generator.weighted);
  for (std::size_t i = 0; i < 4; ++i) shifted(i, i) += Complex(0.0, s.value());
  return largest_singular_value(inverse(shifted));
}

ModeMaximum resolvent_norm(const Parameters& p, std::span<const double> modes, double s) {
  if (modes.empty()) throw InvalidParameters("resolvent norm needs at least one mode");
  ModeMaximum best;
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const double v = resolvent_norm(mode_spectrum(p, modes[n]), s);
    if (n == 0 || v > best.value) best = {v, n};
  }
  return best;
}

double semigroup_observable(const ModeSpectrum& m, double t) {
  require_time(t);
  if (m.spectral) {
    Vec4<Complex> d;
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex lam = m.roots.roots[j];
      const Complex one_minus = 1.0 - lam;
      d[j] = exp_t(lam, t) * lam / (one_minus * one_minus);
    }
    return largest_singular_value(spectral_function(m, d));
  }
  const RealMatrix& b = m.generator.weighted;
  const RealMatrix r = inverse(RealMatrix::identity() - b);
  return largest_singular_value(expm(t * b) * b * r * r);
}

double semigroup_observable(const Parameters& p, double mu, double t) {
  return semigroup_observable(mode_spectrum(p, mu), t);
}

double semigroup_norm(const ModeSpectrum& m, double t) {
  require_time(t);
  if (m.spectral) {
    Vec4<Complex> d;
    for (std::size_t j = 0; j < 4; ++j) d[j] = exp_t(m.roots.roots[j], t);
    return largest_singular_value(spectral_function(m, d));
  }
  return largest_singular_value(expm(t * m.generator.weighted));
}

namespace {

ScanResult scan_at(std::span<const ModeSpectrum> modes, std::span<const DoubleDouble> s_grid, unsigned threads) {
  ScanResult r;
  r.abscissae.resize(s_grid.size());
  r.values.resize(s_grid.size());
  r.argmax.resize(s_grid.size());
  parallel_for(s_grid.size(), threads, [&](std::size_t i) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t n = 0; n < modes.size(); ++n) {
      const double v = resolvent_norm(modes[n], s_grid[i]);
      if (v > best) {
        best = v;
        arg = n;
      }
    }
    r.abscissae[i] = s_grid[i].value();
    r.values[i] = best;
    r.argmax[i] = arg;
  });
  return r;
}

}  // namespace

ScanResult scan_resolvent(std::span<const ModeSpectrum> modes, std::span<const double> s_grid, unsigned threads) {
  if (modes.empty()) throw InvalidParameters("resolvent scan needs at least one mode");
  require_increasing(s_grid, "frequency");
  const std::vector<DoubleDouble> grid(s_grid.begin(), s_grid.end());
  return scan_at(modes, grid, threads);
}

ScanResult scan_resolvent_peaks(std::span<const ModeSpectrum> modes, unsigned threads) {
  if (modes.empty()) throw InvalidParameters("resolvent scan needs at least one mode");
  const auto peaks = peak_frequencies(modes);
  if (peaks.empty()) throw InvalidParameters("no mode has a non-real eigenvalue to resonate with");
  ScanResult r = scan_at(modes, peaks, threads);
  // Distinct double-double peaks can round to the same double; keep the
  // first of each so the abscissae stay strictly increasing.
  ScanResult out;
  for (std::size_t i = 0; i < r.abscissae.size(); ++i) {
    if (!out.abscissae.empty() && !(r.abscissae[i] > out.abscissae.back())) continue;
    out.abscissae.push_back(r.abscissae[i]);
    out.values.push_back(r.values[i]);
    out.argmax.push_back(r.argmax[i]);
  }
  return out;
}

ScanResult scan_resolvent(const Parameters& p, std::span<const double> modes, std::span<const double> s_grid,
                          unsigned threads) {
  const auto spectra = mode_spectra(p, modes, threads);
  return scan_resolvent(spectra, s_grid, threads);
}

ScanResult decay_envelope(std::span<const ModeSpectrum> modes, std::span<const double> t_grid, unsigned threads) {
  if (modes.empty()) throw InvalidParameters("decay envelope needs at least one mode");
  require_increasing(t_grid, "time");
  if (t_grid.front() < 0.0) throw InvalidParameters("time grid must be nonnegative");
  ScanResult r;
  r.abscissae.assign(t_grid.begin(), t_grid.end());
  r.values.resize(t_grid.size());
  r.argmax.resize(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t n = 0; n < modes.size(); ++n) {
      const double v = semigroup_observable(modes[n], t_grid[i]);
      if (v > best) {
        best = v;
        arg = n;
      }
    }
    r.values[i] = best;
    r.argmax[i] = arg;
  });
  return r;
}

ScanResult decay_envelope(const Parameters& p, std::span<const double> modes, std::span<const double> t_grid,
                          unsigned threads) {
  const auto spectra = mode_spectra(p, modes, threads);
  return decay_envelope(spectra, t_grid, threads);
}

std::vector<DoubleDouble> peak_frequencies(std::span<const ModeSpectrum> modes) {
  std::vector<DoubleDouble> s;
  for (const auto& m : modes) {
    const DoubleDouble& im = m.roots.extended[0].im;
    if (im.hi > 0.0) s.push_back(im);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.hi == b.hi && a.lo == b.lo; }),
          s.end());
  return s;
}

FitWindow default_decay_window(std::span<const ModeSpectrum> modes) {
  if (modes.empty()) throw InvalidParameters("decay window needs at least one mode");
  const double mu_max = modes.back().generator.mu;
  const auto top = std::find_if(modes.begin(), modes.end(),
                                [&](const ModeSpectrum& m) { return m.generator.mu >= mu_max / 10.0; });
  FitWindow w{10.0 / modes.front().slowest_rate(), 0.1 / top->slowest_rate()};
  // A spectrum narrower than two decades has no resolved range; fall back to
  // three decades past the first mode's transient.
  if (!(w.hi > w.lo)) w.hi = 1e3 * w.lo;
  return w;
}

FitResult fit_powerlaw(const ScanResult& scan, FitWindow window) {
  if (scan.abscissae.size() != scan.values.size()) throw InvalidParameters("scan columns differ in length");
  FitResult f = least_squares(scan, window);
  if (f.r_squared < 0.95) {
    throw FitRefused("power-law fit has r^2 = " + std::to_string(f.r_squared) +
                         " < 0.95; choose the window explicitly",
                     f.slope, f.r_squared);
  }
  return f;
}

FitWindow auto_window(const ScanResult& scan, double min_r2) {
  if (scan.abscissae.empty()) throw FitRefused("no data to fit", 0.0, 0.0);
  const double x_min = scan.abscissae.front(), x_max = scan.abscissae.back();
  if (!(x_min > 0.0)) throw InvalidParameters("automatic window needs positive abscissae");
  const int i_lo = static_cast<int>(std::floor(std::log2(x_min)));
  const int i_hi = static_cast<int>(std::ceil(std::log2(x_max)));
  bool found = false;
  int best_width = 0;
  double best_r2 = 0.0;
  FitWindow best;
  for (int i = i_lo; i < i_hi; ++i) {
    for (int j = i + 1; j <= i_hi; ++j) {
      const FitWindow w{std::ldexp(1.0, i), std::ldexp(1.0, j)};
      std::size_t count = 0;
      bool positive = true;
      for (std::size_t k = 0; k < scan.abscissae.size(); ++k) {
        if (scan.abscissae[k] < w.lo || scan.abscissae[k] > w.hi) continue;
        ++count;
        positive = positive && scan.values[k] > 0.0;
      }
      // Underflowed values cannot enter a log-log fit.
      if (count < 8 || !positive) continue;
      const FitResult f = least_squares(scan, w);
      if (f.r_squared < min_r2) continue;
      const int width = j - i;
      if (!found || width > best_width || (width == best_width && f.r_squared > best_r2)) {
        found = true;
        best_width = width;
        best_r2 = f.r_squared;
        best = w;
      }
    }
  }
  if (!found) throw FitRefused("no dyadic window reaches the r^2 floor", 0.0, 0.0);
  return best;
}

}  // namespace cattaneo
