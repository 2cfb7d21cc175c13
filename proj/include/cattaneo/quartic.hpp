#pragma once

#include <array>
#include <optional>

#include "cattaneo/core.hpp"
#include "cattaneo/double_double.hpp"
#include "cattaneo/linalg.hpp"

namespace cattaneo {

// c4 λ⁴ + c3 λ³ + c2 λ² + c1 λ + c0, the characteristic polynomial of one
// mode scaled by τ(1 + mμ^γ). Held in double-double: at large μ the roots
// depend on differences such as c2 − c1·(c3/c4) that cancel to many digits.
struct QuarticCoeffs {
  std::array<DoubleDouble, 5> c{};  // c[j] multiplies λ^j
  double mu = 0.0;
  std::optional<Parameters> source;

  // Coefficients given directly, highest degree first.
  static QuarticCoeffs from_values(double c4, double c3, double c2, double c1, double c0);

  [[nodiscard]] double coefficient(std::size_t j) const { return c.at(j).value(); }
  [[nodiscard]] double c4() const { return coefficient(4); }
  [[nodiscard]] double c3() const { return coefficient(3); }
  [[nodiscard]] double c2() const { return coefficient(2); }
  [[nodiscard]] double c1() const { return coefficient(1); }
  [[nodiscard]] double c0() const { return coefficient(0); }
};

// Throws InvalidParameters for invalid p, μ <= 0, or powers of μ that would
// leave the double range.
QuarticCoeffs char_coeffs(const Parameters& p, double mu);

// Roots ordered by |Im| descending with the positive-imaginary member of each
// conjugate pair first, then real roots by Re descending. For the
// normalized system this is (λ1, λ2, λ3, λ4) of the branch expansions.
struct RootSet {
  std::array<Complex, 4> roots{};
  std::array<double, 4> residuals{};  // |f(λ)| / Σ|c_j||λ|^j
  std::array<ComplexDD, 4> extended{};  // the same roots carried in double-double

  [[nodiscard]] double max_residual() const;
};

// |f(z)| / Σ|c_j||z|^j evaluated in double-double.
double normalized_residual(const QuarticCoeffs& c, const ComplexDD& z);

// Companion-matrix eigenvalues of the balanced, rescaled quartic polished by
// simultaneous (Aberth) iteration in double-double. Throws QuarticSolveError
// when a polished residual exceeds 1e-9.
RootSet solve_quartic(const QuarticCoeffs& c);

// Relative residuals of Σλ = −c3/c4, Σλiλj = c2/c4, Σλiλjλk = −c1/c4 and
// Πλ = c0/c4, computed from r.roots.
std::array<double, 4> vieta_residuals(const QuarticCoeffs& c, const RootSet& r);

}  // namespace cattaneo
