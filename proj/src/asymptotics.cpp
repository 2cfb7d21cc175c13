#include "cattaneo/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cattaneo {

bool has_branch_formulas(const Parameters& p) {
  return p.sigma == 2.0 && p.tau == 1.0 && (p.m == 0.0 || p.m == 1.0);
}

std::array<BranchPrediction, 4> predicted_branches(const Parameters& p, double mu) {
  if (!has_branch_formulas(p)) {
    throw UnsupportedNormalization("branch expansions need sigma = 2, tau = 1 and m in {0, 1}");
  }
  if (!classify_region(p).inside()) {
    throw InvalidParameters("branch expansions hold only for alpha > (beta+1)/2");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParameters("mu must be positive and finite");
  const double a = p.alpha, b = p.beta;
  double re = 0.0, im = 0.0;
  if (p.inertial()) {
    const double g = p.gamma;
    re = -0.5 * std::pow(mu, -2.0 * a + b + g);
    im = std::pow(mu, a - g / 2.0);
  } else {
    re = -0.5 * std::pow(mu, b - 2.0 * a);
    im = std::pow(mu, a);
  }
  const double third = -2.0 * std::pow(mu, -2.0 * a + b + 1.0);
  return {{{1, {re, im}, true}, {2, {re, -im}, true}, {3, {third, 0.0}, true}, {4, {-1.0, 0.0}, true}}};
}

double sharpness_product(Complex root, double k) {
  if (root.imag() == 0.0) throw InvalidParameters("sharpness product needs a non-real root");
  return std::abs(root.real()) * std::pow(std::abs(root.imag()), k);
}

BranchReport match_branches(const RootSet& computed, const std::array<BranchPrediction, 4>& predicted, double mu,
                            double k) {
  // Canonical prediction order, so permuting the input cannot change the report.
  auto pred = predicted;
  std::sort(pred.begin(), pred.end(), [](const auto& x, const auto& y) { return x.index < y.index; });

  std::array<std::array<double, 4>, 4> cost{};
  for (std::size_t j = 0; j < 4; ++j) {
    const double scale = std::abs(pred[j].value);
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = std::abs(computed.roots[i] - pred[j].value);
      cost[j][i] = scale > 0.0 ? d / scale : d;
    }
  }
  const Assignment best = best_assignment(cost);

  BranchReport report;
  report.mu = mu;
  report.cost = best.cost;
  report.ambiguous = best.runner_up_cost - best.cost <= 0.01 * best.cost;
  report.low_mu = mu < 100.0 || best.cost > 0.5;
  for (std::size_t j = 0; j < 4; ++j) {
    BranchMatch& m = report.branches[j];
    m.index = pred[j].index;
    m.predicted = pred[j].value;
    m.root = best.target[j];
    m.computed = computed.roots[m.root];
    const Complex c = m.computed, q = m.predicted;
    m.rel_err_re = std::abs(c.real() - q.real()) / std::abs(q.real());
    m.rel_err_im =
        q.imag() != 0.0 ? std::abs(c.imag() - q.imag()) / std::abs(q.imag()) : std::abs(c.imag()) / std::abs(q);
    m.sharpness = c.imag() != 0.0 ? sharpness_product(c, k) : std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace cattaneo
