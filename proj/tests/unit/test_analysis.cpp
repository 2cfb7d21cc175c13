#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cattaneo/analysis.hpp"
#include "cattaneo/errors.hpp"
#include "oracles.hpp"

using namespace cattaneo;

namespace {

Parameters preset(double m = 1.0) {
  Parameters p;
  p.m = m;
  return p;
}

// exp(tB)·X0 by classical Runge–Kutta with n steps, column by column.
Eigen::Matrix4d rk4_propagate(const Eigen::Matrix4d& b, Eigen::Matrix4d x, double t, int n) {
  const double h = t / n;
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix4d k1 = b * x;
    const Eigen::Matrix4d k2 = b * (x + 0.5 * h * k1);
    const Eigen::Matrix4d k3 = b * (x + 0.5 * h * k2);
    const Eigen::Matrix4d k4 = b * (x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

double resolvent_oracle(const ModalGenerator& g, double s) {
  const Eigen::Matrix4cd b = oracle::to_eigen(to_complex(g.weighted));
  const Eigen::Matrix4cd shifted = Complex(0.0, s) * Eigen::Matrix4cd::Identity() - b;
  return oracle::spectral_norm(shifted.inverse());
}

ScanResult power_law(std::vector<double> x, double c, double slope) {
  ScanResult s;
  s.abscissae = std::move(x);
  for (double xi : s.abscissae) s.values.push_back(c * std::pow(xi, slope));
  s.argmax.assign(s.abscissae.size(), 0);
  return s;
}

}  // namespace

TEST(GeometricGrid, EndpointsExactAndIncreasing) {
  const auto g = geometric_grid(1e-3, 7.0, 17);
  ASSERT_EQ(g.size(), 17u);
  EXPECT_EQ(g.front(), 1e-3);
  EXPECT_EQ(g.back(), 7.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_THROW(geometric_grid(1.0, 1.0, 4), InvalidParameters);
  EXPECT_THROW(geometric_grid(0.0, 1.0, 4), InvalidParameters);
}

TEST(ParallelFor, CoversEveryIndexOnceAndRethrows) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
               std::runtime_error);
}

TEST(ResolventNorm, MatchesDenseInverseOracle) {
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 20);
  for (double m : {0.0, 1.0}) {
    for (double mu : modes) {
      const ModeSpectrum ms = mode_spectrum(preset(m), mu);
      for (double s : {0.0, 0.3, 5.0, 250.0, 1e4}) {
        const double ref = resolvent_oracle(ms.generator, s);
        EXPECT_NEAR(resolvent_norm(ms, s), ref, 1e-8 * ref) << "mu " << mu << " s " << s;
      }
    }
  }
}

TEST(ResolventNorm, MatchesOracleOnRandomParameters) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Parameters p = oracle::random_parameters(rng, i % 2 == 0);
    const ModeSpectrum ms = mode_spectrum(p, oracle::log_uniform(rng, 1.0, 1e4));
    const double s = oracle::log_uniform(rng, 1e-3, 1e3);
    const double ref = resolvent_oracle(ms.generator, s);
    EXPECT_NEAR(resolvent_norm(ms, s), ref, 1e-7 * ref);
  }
}

TEST(ResolventNorm, HighFrequencyLimit) {
  // Neumann series: 1/(s + ‖B‖) ≤ ‖(is − B)⁻¹‖ ≤ 1/(s − ‖B‖) once s > ‖B‖.
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 5);
  double radius = 0.0, norm = 0.0;
  for (double mu : modes) {
    const ModeSpectrum ms = mode_spectrum(preset(), mu);
    for (Complex z : ms.roots.roots) radius = std::max(radius, std::abs(z));
    norm = std::max(norm, largest_singular_value(ms.generator.weighted));
  }
  for (double s : {100.0 * radius, 1e3 * radius, 1e4 * radius}) {
    const double v = resolvent_norm(preset(), modes, s).value;
    EXPECT_GE(v * s, s / (s + norm));
    EXPECT_LE(v * s, s / (s - norm));
  }
  const double far = 1e3 * radius;
  EXPECT_NEAR(resolvent_norm(preset(), modes, far).value * far, 1.0, 0.01);
}

TEST(ResolventNorm, ZeroFrequencyIsMaximalStaticInverse) {
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 30);
  double best = 0.0;
  for (double mu : modes) best = std::max(best, static_inverse_norm(modal_generator(preset(), mu)));
  const double v = resolvent_norm(preset(), modes, 0.0).value;
  EXPECT_NEAR(v, best, 1e-10 * best);
}

TEST(ResolventNorm, ResonancePeakNearInverseDampingRate) {
  const ModeSpectrum ms = mode_spectrum(preset(), 1e8);
  const double v = resolvent_norm(ms, ms.roots.extended[0].im);
  const double expected = 1.0 / std::abs(ms.roots.roots[0].real());
  EXPECT_GT(v, expected / 4.0);
  EXPECT_LT(v, expected * 4.0);
}

TEST(ResolventNorm, DistanceToSpectrumLowerBound) {
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 50);
  double lambda3 = 0.0;
  for (double mu : modes) lambda3 = std::max(lambda3, std::abs(mode_spectrum(preset(), mu).roots.roots[2]));
  for (double s : geometric_grid(10.0 * lambda3, 1e6, 40)) {
    EXPECT_GE(s * resolvent_norm(preset(), modes, s).value, 1.0 - 1e-6);
  }
}

TEST(ResolventNorm, EmptyModeListRejected) {
  EXPECT_THROW(resolvent_norm(preset(), std::span<const double>{}, 1.0), InvalidParameters);
}

TEST(Semigroup, MatchesRungeKuttaAtUnitModeAndTime) {
  for (double m : {0.0, 1.0}) {
    const ModeSpectrum ms = mode_spectrum(preset(m), 1.0);
    const Eigen::Matrix4d b = oracle::to_eigen(ms.generator.weighted);
    const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d e = rk4_propagate(b, id, 1.0, 4000);
    EXPECT_NEAR(semigroup_norm(ms, 1.0), Eigen::JacobiSVD<Eigen::Matrix4d>(e).singularValues()(0), 1e-8);
    const Eigen::Matrix4d x0 = b * ((id - b) * (id - b)).inverse();
    const Eigen::Matrix4d x1 = rk4_propagate(b, x0, 1.0, 4000);
    EXPECT_NEAR(semigroup_observable(ms, 1.0), Eigen::JacobiSVD<Eigen::Matrix4d>(x1).singularValues()(0), 1e-8);
  }
}

TEST(Semigroup, InitialValueIsWeightedObservable) {
  const ModeSpectrum ms = mode_spectrum(preset(), 50.0);
  const Eigen::Matrix4d b = oracle::to_eigen(ms.generator.weighted);
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  const double ref = Eigen::JacobiSVD<Eigen::Matrix4d>(b * ((id - b) * (id - b)).inverse()).singularValues()(0);
  EXPECT_NEAR(semigroup_observable(ms, 0.0), ref, 1e-10 * ref);
  EXPECT_NEAR(semigroup_norm(ms, 0.0), 1.0, 1e-12);
  EXPECT_THROW(semigroup_observable(ms, -1.0), InvalidParameters);
}

TEST(Semigroup, EventuallyExponential) {
  const ModeSpectrum ms = mode_spectrum(preset(), 10.0);
  const double rate = ms.slowest_rate();
  for (double t : {1e3, 1e4}) {
    EXPECT_LE(semigroup_observable(ms, t), 10.0 * ms.condition * std::exp(-rate * t) + 1e-300);
  }
}

TEST(Semigroup, ContractionOnSampledRegion) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const Parameters p = oracle::random_parameters(rng, true);
    const ModeSpectrum ms = mode_spectrum(p, oracle::log_uniform(rng, 1.0, 1e10));
    EXPECT_LE(semigroup_norm(ms, oracle::log_uniform(rng, 1e-4, 1e6)), 1.0 + 1e-10);
  }
}

TEST(Scans, IndependentOfThreadCount) {
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 64);
  const auto one = mode_spectra(preset(), modes, 1);
  const auto four = mode_spectra(preset(), modes, 4);
  const auto grid = geometric_grid(1e-3, 1e6, 101);
  const ScanResult a = scan_resolvent(one, grid, 1), b = scan_resolvent(four, grid, 4);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.argmax, b.argmax);
  const auto tgrid = geometric_grid(1.0, 1e6, 33);
  EXPECT_EQ(decay_envelope(one, tgrid, 1).values, decay_envelope(four, tgrid, 3).values);
  EXPECT_EQ(scan_resolvent_peaks(one, 1).values, scan_resolvent_peaks(four, 4).values);
}

TEST(Scans, RejectNonIncreasingGrid) {
  const auto modes = spectrum(SpectrumModel::biharmonic_1d(), 4);
  const std::vector<double> bad{1.0, 0.5};
  EXPECT_THROW(scan_resolvent(preset(), modes, bad), InvalidParameters);
}

TEST(Scans, SingleModePeaksNearResonance) {
  const std::vector<double> modes{1.0};
  const auto spectra = mode_spectra(preset(), modes);
  const double im = spectra[0].roots.roots[0].imag();
  const auto grid = geometric_grid(0.01, 100.0, 2001);
  const ScanResult s = scan_resolvent(spectra, grid);
  const auto top = std::max_element(s.values.begin(), s.values.end()) - s.values.begin();
  EXPECT_NEAR(grid[top], im, 0.35 * im);
}

TEST(Scans, PeakFrequenciesSortedAndUnique) {
  const auto spectra = mode_spectra(preset(), spectrum(SpectrumModel::biharmonic_1d(), 50));
  const auto peaks = peak_frequencies(spectra);
  ASSERT_EQ(peaks.size(), 50u);
  for (std::size_t i = 1; i < peaks.size(); ++i) EXPECT_TRUE(peaks[i - 1] < peaks[i]);
}

TEST(Scans, EnvelopeNonIncreasingAfterGlobalMaximum) {
  const auto spectra = mode_spectra(preset(), spectrum(SpectrumModel::biharmonic_1d(), 200));
  const FitWindow w = default_decay_window(spectra);
  const ScanResult env = decay_envelope(spectra, geometric_grid(w.lo, w.hi, 64));
  const auto top = std::max_element(env.values.begin(), env.values.end()) - env.values.begin();
  for (std::size_t i = static_cast<std::size_t>(top) + 1; i < env.values.size(); ++i) {
    EXPECT_LE(env.values[i], env.values[i - 1]);
  }
}

TEST(Scans, DecaySlopeStableUnderModeDoubling) {
  const auto base = mode_spectra(preset(), spectrum(SpectrumModel::biharmonic_1d(), 200));
  const auto twice = mode_spectra(preset(), spectrum(SpectrumModel::biharmonic_1d(), 400));
  const FitWindow w = default_decay_window(base);
  const auto grid = geometric_grid(w.lo, w.hi, 64);
  const double a = fit_powerlaw(decay_envelope(base, grid), w).slope;
  const double b = fit_powerlaw(decay_envelope(twice, grid), w).slope;
  EXPECT_LT(std::abs(a - b), 0.02 * std::abs(a));
}

TEST(Fit, ExactPowerLaw) {
  const FitResult f = fit_powerlaw(power_law(geometric_grid(1.0, 1e4, 20), 3.0, -0.5), {1.0, 1e4});
  EXPECT_NEAR(f.slope, -0.5, 1e-12);
  EXPECT_NEAR(f.intercept, std::log10(3.0), 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_EQ(f.points, 20u);
}

TEST(Fit, NoisyPowerLaw) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> n(0.0, 0.01);
  ScanResult s = power_law(geometric_grid(1.0, 1e4, 64), 3.0, -0.5);
  for (double& v : s.values) v *= 1.0 + n(rng);
  EXPECT_NEAR(fit_powerlaw(s, {1.0, 1e4}).slope, -0.5, 0.01);
}

TEST(Fit, ConstantDataHasZeroSlope) {
  const FitResult f = fit_powerlaw(power_law(geometric_grid(1.0, 10.0, 10), 2.0, 0.0), {1.0, 10.0});
  EXPECT_EQ(f.slope, 0.0);
  EXPECT_EQ(f.r_squared, 1.0);
}

TEST(Fit, RefusesPoorFitAndRejectsSparseWindow) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  ScanResult s = power_law(geometric_grid(1.0, 1e3, 40), 1.0, 0.0);
  for (double& v : s.values) v = u(rng);
  EXPECT_THROW(fit_powerlaw(s, {1.0, 1e3}), FitRefused);
  EXPECT_THROW(fit_powerlaw(s, {1.0, 2.0}), InvalidParameters);
}

TEST(Fit, AutoWindowExcludesExponentialTail) {
  ScanResult s = power_law(geometric_grid(1.0, std::ldexp(1.0, 30), 121), 1.0, -0.5);
  for (std::size_t i = 0; i < s.abscissae.size(); ++i) {
    const double x = s.abscissae[i];
    if (x > std::ldexp(1.0, 20)) s.values[i] *= std::exp(-(x - std::ldexp(1.0, 20)) / std::ldexp(1.0, 20));
  }
  const FitWindow w = auto_window(s);
  EXPECT_LE(w.hi, std::ldexp(1.0, 21));
  EXPECT_NEAR(fit_powerlaw(s, w).slope, -0.5, 0.02);
}
