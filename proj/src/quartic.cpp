#include "cattaneo/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cattaneo {
namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr int kMaxIterations = 80;
constexpr double kStepTolerance = 1e-29;

ComplexDD horner(const QuarticCoeffs& c, const ComplexDD& z) {
  ComplexDD f(c.c[4], DoubleDouble(0.0));
  for (int j = 3; j >= 0; --j) f = f * z + ComplexDD(c.c[static_cast<std::size_t>(j)], DoubleDouble(0.0));
  return f;
}

Complex horner_derivative(const QuarticCoeffs& c, Complex z) {
  Complex d = 4.0 * c.c4();
  d = d * z + 3.0 * c.c3();
  d = d * z + 2.0 * c.c2();
  d = d * z + c.c1();
  return d;
}

double magnitude(const ComplexDD& z) { return std::abs(z.value()); }

// Initial estimates: eigenvalues of the companion matrix of the quartic in
// λ = s·x with s = (c0/c4)^(1/4), which brings the outer coefficients to 1.
std::array<Complex, 4> companion_estimates(const QuarticCoeffs& c) {
  const double c4 = c.c4();
  double s = std::pow(std::abs(c.c0() / c4), 0.25);
  if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
  RealMatrix comp;
  double scale = 1.0;
  for (std::size_t k = 1; k <= 4; ++k) {
    scale *= s;
    comp(0, k - 1) = -(c.c[4 - k] / c.c[4]).value() / scale;
  }
  for (std::size_t i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
  auto est = eigenvalues(comp);
  for (auto& z : est) z *= s;
  return est;
}

// Aberth-Ehrlich simultaneous iteration. The polynomial value is taken in
// double-double, so the fixed point is accurate to double-double precision
// even though each correction is formed in double.
void aberth(const QuarticCoeffs& c, std::array<ComplexDD, 4>& z) {
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const ComplexDD f = horner(c, z[i]);
      const Complex fv = f.value();
      if (fv == Complex(0.0)) continue;
      const Complex zi = z[i].value();
      const Complex fp = horner_derivative(c, zi);
      Complex repulsion(0.0);
      for (std::size_t j = 0; j < 4; ++j) {
        if (j == i) continue;
        const Complex d = (z[i] - z[j]).value();
        if (d != Complex(0.0)) repulsion += 1.0 / d;
      }
      const Complex ratio = fv / fp;
      Complex w = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        w = Complex(1e-8 * (std::abs(zi) + 1.0), 1e-8 * (std::abs(zi) + 1.0));
      }
      z[i] = z[i] - ComplexDD(w);
      const double zm = std::abs(z[i].value());
      max_step = std::max(max_step, zm > 0.0 ? std::abs(w) / zm : std::abs(w));
    }
    if (max_step < kStepTolerance) return;
  }
}

// Real coefficients: make the root multiset exactly closed under conjugation.
void symmetrize(std::array<ComplexDD, 4>& z) {
  std::array<bool, 4> done{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double zi = magnitude(z[i]);
    if (std::abs(z[i].im.value()) <= 1e-20 * zi) {
      z[i].im = DoubleDouble(0.0);
      done[i] = true;
    }
  }
  // Pair each upper-half root with the nearest unpaired lower-half conjugate.
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return z[a].im.value() > z[b].im.value(); });
  for (std::size_t i : order) {
    if (done[i] || z[i].im.hi < 0.0) continue;
    std::size_t best = 4;
    double best_d = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (done[j] || j == i || z[j].im.hi > 0.0) continue;
      const double d = std::abs(z[j].value() - std::conj(z[i].value()));
      if (best == 4 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == 4) {
      z[i].im = DoubleDouble(0.0);
      done[i] = true;
      continue;
    }
    const DoubleDouble half(0.5);
    const DoubleDouble re = (z[i].re + z[best].re) * half;
    const DoubleDouble im = (z[i].im - z[best].im) * half;
    z[i] = ComplexDD(re, im);
    z[best] = ComplexDD(re, -im);
    done[i] = done[best] = true;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (!done[i]) z[i].im = DoubleDouble(0.0);
  }
}

// The real part of the dominant conjugate pair is tiny relative to its
// modulus at large μ and is poorly fixed by its own polynomial value. The
// root sum −c3/c4 determines it from the remaining, well-conditioned roots.
void correct_dominant_pair(const QuarticCoeffs& c, std::array<ComplexDD, 4>& z) {
  std::size_t top = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (magnitude(z[i]) > magnitude(z[top])) top = i;
  }
  if (z[top].im.hi == 0.0) return;
  std::size_t partner = 4;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j != top && z[j].re.hi == z[top].re.hi && z[j].re.lo == z[top].re.lo &&
        z[j].im.hi == -z[top].im.hi && z[j].im.lo == -z[top].im.lo) {
      partner = j;
    }
  }
  if (partner == 4) return;
  DoubleDouble rest(0.0);
  for (std::size_t j = 0; j < 4; ++j) {
    if (j != top && j != partner) rest += z[j].re;
  }
  const DoubleDouble re = (-(c.c[3] / c.c[4]) - rest) * DoubleDouble(0.5);
  z[top].re = re;
  z[partner].re = re;
}

}  // namespace

QuarticCoeffs QuarticCoeffs::from_values(double c4, double c3, double c2, double c1, double c0) {
  QuarticCoeffs q;
  q.c = {DoubleDouble(c0), DoubleDouble(c1), DoubleDouble(c2), DoubleDouble(c3), DoubleDouble(c4)};
  return q;
}

QuarticCoeffs char_coeffs(const Parameters& p, double mu) {
  validate(p);
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParameters("mu must be positive and finite");
  const double top = std::max({2.0 * p.alpha, 1.0 + p.beta, p.beta + (p.inertial() ? p.gamma : 0.0), 1.0});
  if (top * std::abs(std::log10(mu)) > 300.0) {
    throw InvalidParameters("mu = " + std::to_string(mu) + " puts mu^" + std::to_string(top) +
                            " outside the double range");
  }
  using dd_detail::two_prod;
  const double mu_2a = std::pow(mu, 2.0 * p.alpha);
  const double mu_b = std::pow(mu, p.beta);
  const double mu_1b = std::pow(mu, 1.0 + p.beta);

  QuarticCoeffs q;
  q.mu = mu;
  q.source = p;
  DoubleDouble inertia(0.0), inertia_b(0.0);
  if (p.inertial()) {
    inertia = two_prod(p.m, std::pow(mu, p.gamma));
    inertia_b = two_prod(p.m, std::pow(mu, p.beta + p.gamma));
  }
  const DoubleDouble tau(p.tau);
  q.c[3] = inertia + DoubleDouble(1.0);
  q.c[4] = tau * q.c[3];
  q.c[2] = two_prod(p.tau, mu_2a) + inertia_b + two_prod(p.sigma, p.tau) * DoubleDouble(mu) + DoubleDouble(mu_b);
  q.c[1] = DoubleDouble(mu_2a) + two_prod(p.sigma, mu);
  q.c[0] = two_prod(p.sigma, mu_1b);
  for (const auto& x : q.c) {
    if (!(x.hi > 0.0) || !std::isfinite(x.hi)) {
      throw InvalidParameters("characteristic coefficients left the double range at mu = " + std::to_string(mu));
    }
  }
  return q;
}

double RootSet::max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }

double normalized_residual(const QuarticCoeffs& c, const ComplexDD& z) {
  const double f = magnitude(horner(c, z));
  const double r = std::abs(z.value());
  double scale = 0.0;
  double power = 1.0;
  for (std::size_t j = 0; j < 5; ++j) {
    scale += std::abs(c.coefficient(j)) * power;
    power *= r;
  }
  if (scale == 0.0) return f == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return f / scale;
}

RootSet solve_quartic(const QuarticCoeffs& c) {
  if (!(c.c4() > 0.0)) throw InvalidParameters("leading coefficient c4 must be > 0");
  std::array<Complex, 4> est;
  try {
    est = companion_estimates(c);
  } catch (const NumericalFailure& e) {
    throw QuarticSolveError(std::string("companion eigenvalues failed: ") + e.what(), c.mu,
                            std::numeric_limits<double>::infinity());
  }
  // Coincident estimates stall the repulsion term; separate them slightly.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (est[i] == est[j]) est[i] += Complex(1e-7 * (std::abs(est[i]) + 1e-300), 1e-7 * std::abs(est[i]));
    }
  }
  std::array<ComplexDD, 4> z;
  for (std::size_t i = 0; i < 4; ++i) z[i] = ComplexDD(est[i]);
  aberth(c, z);
  symmetrize(z);
  correct_dominant_pair(c, z);

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ia = std::abs(z[a].im.value()), ib = std::abs(z[b].im.value());
    if (ia != ib) return ia > ib;
    const bool pa = z[a].im.hi > 0.0, pb = z[b].im.hi > 0.0;
    if (pa != pb) return pa;
    return z[a].re.value() > z[b].re.value();
  });

  RootSet out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.extended[k] = z[order[k]];
    out.roots[k] = out.extended[k].value();
    out.residuals[k] = normalized_residual(c, out.extended[k]);
    if (!(out.residuals[k] <= kResidualTolerance)) {
      throw QuarticSolveError("quartic root residual " + std::to_string(out.residuals[k]) +
                                  " exceeds 1e-9 at mu = " + std::to_string(c.mu),
                              c.mu, out.residuals[k]);
    }
  }
  return out;
}

std::array<double, 4> vieta_residuals(const QuarticCoeffs& c, const RootSet& r) {
  const auto& x = r.roots;
  Complex e1(0.0), e2(0.0), e3(0.0), e4(1.0);
  for (std::size_t i = 0; i < 4; ++i) {
    e1 += x[i];
    e4 *= x[i];
    for (std::size_t j = i + 1; j < 4; ++j) {
      e2 += x[i] * x[j];
      for (std::size_t k = j + 1; k < 4; ++k) e3 += x[i] * x[j] * x[k];
    }
  }
  const double c4 = c.c4();
  const std::array<double, 4> expected{-c.c3() / c4, c.c2() / c4, -c.c1() / c4, c.c0() / c4};
  const std::array<Complex, 4> got{e1, e2, e3, e4};
  std::array<double, 4> res{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double denom = std::abs(expected[i]);
    res[i] = denom > 0.0 ? std::abs(got[i] - expected[i]) / denom : std::abs(got[i]);
  }
  return res;
}

}  // namespace cattaneo
