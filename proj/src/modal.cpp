#include "cattaneo/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cattaneo/double_double.hpp"

namespace cattaneo {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Re(a · conj(b)) without rounding the products.
DoubleDouble re_dot(Complex a, Complex b) {
  return dd_detail::two_prod(a.real(), b.real()) + dd_detail::two_prod(a.imag(), b.imag());
}

}  // namespace

ModalGenerator modal_generator(const Parameters& p, double mu) {
  validate(p);
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParameters("mu must be positive and finite");
  if (2.0 * p.alpha * std::abs(std::log10(mu)) > 300.0) {
    throw InvalidParameters("mu = " + std::to_string(mu) + " puts mu^(2 alpha) outside the double range");
  }
  ModalGenerator g;
  g.mu = mu;
  g.sigma = p.sigma;
  g.tau = p.tau;
  g.inertia = p.inertial() ? 1.0 + p.m * std::pow(mu, p.gamma) : 1.0;
  g.mu_alpha = std::pow(mu, p.alpha);
  g.mu_beta_half = std::pow(mu, p.beta / 2.0);
  const double sigma_mu = p.sigma * mu;
  if (!std::isfinite(sigma_mu) || !std::isfinite(g.inertia) || !std::isfinite(g.mu_alpha)) {
    throw InvalidParameters("modal generator entries overflow at mu = " + std::to_string(mu));
  }

  auto& m = g.entries;
  m(0, 1) = 1.0;
  m(1, 0) = -sigma_mu / g.inertia;
  m(1, 2) = g.mu_alpha / g.inertia;
  m(2, 1) = -g.mu_alpha;
  m(2, 3) = g.mu_beta_half;
  m(3, 2) = -g.mu_beta_half / p.tau;
  m(3, 3) = -1.0 / p.tau;

  g.weight = {std::sqrt(sigma_mu), std::sqrt(g.inertia), 1.0, std::sqrt(p.tau)};

  const double b12 = std::sqrt(sigma_mu / g.inertia);
  const double b23 = g.mu_alpha / std::sqrt(g.inertia);
  const double b34 = g.mu_beta_half / std::sqrt(p.tau);
  auto& b = g.weighted;
  b(0, 1) = b12;
  b(1, 0) = -b12;
  b(1, 2) = b23;
  b(2, 1) = -b23;
  b(2, 3) = b34;
  b(3, 2) = -b34;
  b(3, 3) = -1.0 / p.tau;
  return g;
}

double weighted_norm(const ModalGenerator& g, const ModalState& s) {
  const double sigma_mu = g.sigma * g.mu;
  return std::sqrt(sigma_mu * std::norm(s.u) + g.inertia * std::norm(s.v) + std::norm(s.theta) +
                   g.tau * std::norm(s.q));
}

double dissipation_residual(const ModalGenerator& g, const ModalState& s) {
  // Row i of Re Σ W_i² (M s)_i conj(s_i), with each W_i² M_ij in closed form.
  const DoubleDouble sigma_mu = dd_detail::two_prod(g.sigma, g.mu);
  const DoubleDouble a(g.mu_alpha), h(g.mu_beta_half);
  DoubleDouble sum = sigma_mu * re_dot(s.v, s.u);
  sum += -(sigma_mu * re_dot(s.u, s.v)) + a * re_dot(s.theta, s.v);
  sum += -(a * re_dot(s.v, s.theta)) + h * re_dot(s.q, s.theta);
  sum += -re_dot(s.q, s.q) - h * re_dot(s.theta, s.q);
  sum += re_dot(s.q, s.q);
  return sum.value();
}

double static_inverse_norm(const ModalGenerator& g) { return largest_singular_value(inverse(g.weighted)); }

std::array<Complex, 4> modal_eigenvalues(const ModalGenerator& g) {
  const RealMatrix& b = g.weighted;
  const auto direct = eigenvalues(b);
  const RealMatrix b_inv = inverse(b);
  auto reciprocal = eigenvalues(b_inv);
  for (auto& z : reciprocal) z = 1.0 / z;

  // QR perturbs an eigenvalue by about eps·‖B‖ directly and by
  // eps·‖B⁻¹‖·|λ|² through the inverse; small eigenvalues favour the latter.
  std::array<std::array<double, 4>, 4> cost{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex r = reciprocal[j];
      const bool finite = std::isfinite(r.real()) && std::isfinite(r.imag());
      // Scale-free distance in [0, 1]; an infinite reciprocal is maximally far.
      cost[i][j] = finite ? std::abs(direct[i] - r) / (std::abs(direct[i]) + std::abs(r) + 1e-300) : 1.0;
    }
  const Assignment pairing = best_assignment(cost);
  const double err_direct = kEps * norm_1(b);
  const double inv_norm = norm_1(b_inv);
  std::array<Complex, 4> z{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex r = reciprocal[pairing.target[i]];
    const bool finite = std::isfinite(r.real()) && std::isfinite(r.imag());
    z[i] = !finite || err_direct <= kEps * inv_norm * std::norm(r) ? direct[i] : r;
  }

  for (int iter = 0; iter < 40; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const Complex f = shifted_determinant(g.entries, z[i]).value();
      const Complex fp = shifted_determinant_derivative(g.entries, z[i]);
      if (f == Complex(0.0) || fp == Complex(0.0)) continue;
      Complex step = f / fp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < 4; ++j) {
        if (j != i) gap = std::min(gap, std::abs(z[i] - z[j]));
      }
      // Keep each estimate inside its own basin.
      if (gap > 0.0 && std::abs(step) > 0.5 * gap) step *= 0.5 * gap / std::abs(step);
      z[i] -= step;
      const double zm = std::abs(z[i]);
      worst = std::max(worst, zm > 0.0 ? std::abs(step) / zm : std::abs(step));
    }
    if (worst < 4.0 * kEps) break;
  }
  return z;
}

double interpolation_check(double p_exp, double q_exp, double r_exp, std::span<const double> modes,
                           std::span<const Complex> x) {
  if (modes.empty()) throw InvalidParameters("interpolation check needs at least one mode");
  if (modes.size() != x.size()) throw InvalidParameters("modes and amplitudes differ in length");
  if (!(r_exp <= p_exp && p_exp <= q_exp && r_exp < q_exp)) {
    throw InvalidParameters("interpolation exponents must satisfy r <= p <= q and r < q");
  }
  const auto norm_sq = [&](double e) {
    double acc = 0.0;
    for (std::size_t n = 0; n < modes.size(); ++n) acc += std::pow(modes[n], 2.0 * e) * std::norm(x[n]);
    return acc;
  };
  const double theta = (p_exp - r_exp) / (q_exp - r_exp);
  const double lhs = std::sqrt(norm_sq(p_exp));
  const double rhs = std::pow(norm_sq(q_exp), theta / 2.0) * std::pow(norm_sq(r_exp), (1.0 - theta) / 2.0);
  return rhs - lhs;
}

}  // namespace cattaneo
