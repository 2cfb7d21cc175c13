#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cattaneo/errors.hpp"

namespace cattaneo {

// One abstract thermoelastic system with Cattaneo heat conduction:
//   u'' + m A^gamma u'' + sigma A u - A^alpha theta = 0
//   theta' - A^(beta/2) q + A^alpha u' = 0
//   tau q' + q + A^(beta/2) theta = 0
struct Parameters {
  double alpha = 1.0;  // coupling exponent
  double beta = 0.0;   // thermal damping exponent
  double gamma = 0.5;  // inertia exponent, ignored when m == 0
  double m = 1.0;      // inertia coefficient
  double sigma = 2.0;  // wave speed
  double tau = 1.0;    // relaxation time

  [[nodiscard]] bool inertial() const { return m > 0.0; }
  bool operator==(const Parameters&) const = default;
};

// Throws InvalidParameters naming the violated invariant. tau <= 0 is
// rejected as the (unsupported) Fourier case.
void validate(const Parameters& p);

enum class RegionTag { InQ, OutsideQ, InQStar, OutsideQStar };

std::string_view to_string(RegionTag tag);

struct Region {
  RegionTag tag = RegionTag::OutsideQ;
  double margin = 0.0;  // alpha - (beta + 1) / 2

  [[nodiscard]] bool inside() const { return tag == RegionTag::InQ || tag == RegionTag::InQStar; }
};

// Strict inequality: the boundary alpha = (beta+1)/2 is outside.
Region classify_region(const Parameters& p);

enum class Sharpness { Sharp, Unknown };

std::string_view to_string(Sharpness s);

struct DecayExponents {
  double l = 1.0;               // resolvent exponent at zero
  double k = 0.0;               // resolvent exponent at infinity
  double a = 1.0;               // decay denominator
  double decay_exponent = 1.0;  // ||T(t) A (I-A)^-2|| = O(t^-decay_exponent)
  Sharpness sharp = Sharpness::Unknown;
};

// Throws InvalidParameters outside Q (m > 0) or Q* (m == 0).
DecayExponents decay_exponents(const Parameters& p);

enum class SpectrumKind { ExplicitList, PowerLaw, Biharmonic1D, Laplace1D, Geometric };

// Generator of the eigenvalue sequence of A.
struct SpectrumModel {
  SpectrumKind kind = SpectrumKind::Biharmonic1D;
  double c = 1.0;              // PowerLaw: c n^p; Geometric: lower end
  double p = 1.0;              // PowerLaw exponent; Geometric: upper end
  std::vector<double> values;  // ExplicitList

  static SpectrumModel explicit_list(std::vector<double> values);
  static SpectrumModel power_law(double c, double p);
  static SpectrumModel biharmonic_1d();
  static SpectrumModel laplace_1d();
  // n_modes values spaced geometrically from lo to hi inclusive.
  static SpectrumModel geometric(double lo, double hi);

  // "biharmonic1d", "laplace1d", "powerlaw:c:p", "geometric:lo:hi",
  // "list:v1,v2,...". ("list:FILE" is resolved by the CLI.)
  static SpectrumModel parse(std::string_view text);
  [[nodiscard]] std::string describe() const;
};

// Exactly n_modes positive non-decreasing values.
std::vector<double> spectrum(const SpectrumModel& model, std::size_t n_modes);

}  // namespace cattaneo
