#pragma once

#include <array>
#include <span>

#include "cattaneo/core.hpp"
#include "cattaneo/linalg.hpp"

namespace cattaneo {

// Amplitudes of one mode: displacement, velocity, temperature, heat flux.
struct ModalState {
  Complex u{}, v{}, theta{}, q{};

  [[nodiscard]] Vec4<Complex> as_vector() const { return {u, v, theta, q}; }
  static ModalState from_vector(const Vec4<Complex>& x) { return {x[0], x[1], x[2], x[3]}; }
};

// Restriction of the generator to the eigenspace of A with eigenvalue mu.
struct ModalGenerator {
  double mu = 0.0;
  RealMatrix entries;  // M acting on (u, v, theta, q)
  Vec4<double> weight{};  // (√(σμ), √(1+mμ^γ), 1, √τ); ‖U‖_W = ‖diag(weight) U‖₂
  // W M W⁻¹, assembled from the closed forms so that it is exactly
  // skew-symmetric apart from the (4,4) entry −1/τ.
  RealMatrix weighted;

  // Building blocks shared by the closed-form evaluations.
  double sigma = 0.0;
  double tau = 0.0;
  double inertia = 0.0;     // D = 1 + mμ^γ
  double mu_alpha = 0.0;    // μ^α
  double mu_beta_half = 0.0;  // μ^(β/2)
};

// Throws InvalidParameters for invalid p, μ <= 0, or μ^(2α) beyond the
// double range.
ModalGenerator modal_generator(const Parameters& p, double mu);

// √(σμ|u|² + (1+mμ^γ)|v|² + |θ|² + τ|q|²)
double weighted_norm(const ModalGenerator& g, const ModalState& s);

// Re⟨M s, s⟩_W + |q|², accumulated in double-double; zero up to rounding.
double dissipation_residual(const ModalGenerator& g, const ModalState& s);

// ‖M⁻¹‖_W, the largest singular value of W M⁻¹ W⁻¹.
double static_inverse_norm(const ModalGenerator& g);

// Eigenvalues of M found without forming its characteristic polynomial:
// QR on W M W⁻¹ and on its inverse, the better estimate per eigenvalue,
// then Newton on det(zI − M) evaluated in double-double.
std::array<Complex, 4> modal_eigenvalues(const ModalGenerator& g);

// RHS − LHS of ‖A^p x‖ ≤ ‖A^q x‖^((p−r)/(q−r)) ‖A^r x‖^((q−p)/(q−r)) for a
// vector with amplitude x[n] on the mode with eigenvalue modes[n]. Requires
// r <= p <= q, r < q and matching non-empty inputs.
double interpolation_check(double p_exp, double q_exp, double r_exp, std::span<const double> modes,
                           std::span<const Complex> x);

}  // namespace cattaneo
