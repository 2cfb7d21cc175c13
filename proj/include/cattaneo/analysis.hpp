#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cattaneo/core.hpp"
#include "cattaneo/linalg.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/quartic.hpp"

namespace cattaneo {

// Eigenvector matrices with a 1-norm condition number below this are used
// for spectral evaluation; above it the direct (LU / Padé) routes take over.
inline constexpr double kSpectralConditionLimit = 1e8;

// Everything the scans need about one mode, computed once.
struct ModeSpectrum {
  ModalGenerator generator;
  RootSet roots;
  // Unit eigenvectors of the weighted matrix W M W⁻¹, column j for roots[j].
  ComplexMatrix vectors;
  ComplexMatrix inverse_vectors;
  double condition = 0.0;
  bool spectral = false;  // condition < kSpectralConditionLimit

  // min_j |Re λ_j|, the slowest decay rate of the mode.
  [[nodiscard]] double slowest_rate() const;
};

ModeSpectrum mode_spectrum(const Parameters& p, double mu);

// Runs body(i) for i in [0, n) on up to `threads` worker threads (0 means
// hardware concurrency). Each index is written by exactly one call, so
// results do not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

std::vector<ModeSpectrum> mode_spectra(const Parameters& p, std::span<const double> modes, unsigned threads = 1);

// n points from lo to hi with constant ratio, endpoints exact.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

struct ModeMaximum {
  double value = 0.0;
  std::size_t mode = 0;  // index into the mode list; lowest index wins ties
};

// ‖(is − M)⁻¹‖_W for one mode. The double-double overload resolves
// resonances narrower than the spacing of doubles near s.
double resolvent_norm(const ModeSpectrum& mode, double s);
double resolvent_norm(const ModeSpectrum& mode, DoubleDouble s);
// Maximum over modes; exact for the block-diagonal truncation.
ModeMaximum resolvent_norm(const Parameters& p, std::span<const double> modes, double s);

// ‖e^{tM} M (I − M)⁻²‖_W and ‖e^{tM}‖_W for one mode. Throws InvalidParameters for t < 0.
double semigroup_observable(const ModeSpectrum& mode, double t);
double semigroup_observable(const Parameters& p, double mu, double t);
double semigroup_norm(const ModeSpectrum& mode, double t);

struct ScanResult {
  std::vector<double> abscissae;  // strictly increasing
  std::vector<double> values;
  std::vector<std::size_t> argmax;  // mode index attaining each value
};

ScanResult scan_resolvent(std::span<const ModeSpectrum> modes, std::span<const double> s_grid, unsigned threads = 1);
ScanResult scan_resolvent(const Parameters& p, std::span<const double> modes, std::span<const double> s_grid,
                          unsigned threads = 1);

ScanResult decay_envelope(std::span<const ModeSpectrum> modes, std::span<const double> t_grid, unsigned threads = 1);
ScanResult decay_envelope(const Parameters& p, std::span<const double> modes, std::span<const double> t_grid,
                          unsigned threads = 1);

// Resonance abscissae: Im λ1 of every mode with a non-real root, sorted and
// deduplicated.
std::vector<DoubleDouble> peak_frequencies(std::span<const ModeSpectrum> modes);

// Scan evaluated exactly at the resonance abscissae; the reported abscissae
// are those values rounded to double.
ScanResult scan_resolvent_peaks(std::span<const ModeSpectrum> modes, unsigned threads = 1);

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// Default decay window: from 10 / (slowest rate of the first mode) to
// 0.1 / (slowest rate of the lowest mode in the top decade), the range in
// which the truncation resolves the envelope.
FitWindow default_decay_window(std::span<const ModeSpectrum> modes);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;  // of log10(value) against log10(abscissa)
  double r_squared = 1.0;
  FitWindow window;
  std::size_t points = 0;
};

// Least squares on (log abscissa, log value) over points inside the closed
// window. Needs at least 8 points and positive values (InvalidParameters);
// throws FitRefused below r² = 0.95. Constant data give slope 0, r² = 1.
FitResult fit_powerlaw(const ScanResult& scan, FitWindow window);

// Widest window [2^i, 2^j] holding at least 8 points with r² >= min_r2;
// ties go to the higher r², then to the lower i. Throws FitRefused if none.
FitWindow auto_window(const ScanResult& scan, double min_r2 = 0.98);

}  // namespace cattaneo
