#pragma once

#include <array>

#include "cattaneo/core.hpp"
#include "cattaneo/linalg.hpp"
#include "cattaneo/quartic.hpp"

namespace cattaneo {

// Leading-order eigenvalue branches are known only for σ = 2, τ = 1 and
// m ∈ {0, 1}.
bool has_branch_formulas(const Parameters& p);

struct BranchPrediction {
  int index = 0;  // 1..4
  Complex value{};
  bool normalized = false;  // σ = 2, τ = 1, m ∈ {0, 1}
};

// m = 1: λ1,2 = −½μ^(−2α+β+γ) ± iμ^(α−γ/2), λ3 = −2μ^(−2α+β+1), λ4 = −1.
// m = 0: λ1,2 = −½μ^(β−2α) ± iμ^α, λ3 and λ4 as above.
// Throws UnsupportedNormalization or, outside Q / Q*, InvalidParameters.
std::array<BranchPrediction, 4> predicted_branches(const Parameters& p, double mu);

struct BranchMatch {
  int index = 0;  // prediction index
  std::size_t root = 0;  // position of the computed root in the RootSet
  Complex computed{};
  Complex predicted{};
  double rel_err_re = 0.0;
  // Relative error of Im; for a real prediction, |Im computed| / |predicted|.
  double rel_err_im = 0.0;
  // |Re λ|·|Im λ|^k of the computed root; NaN when the root is real.
  double sharpness = 0.0;
};

struct BranchReport {
  double mu = 0.0;
  std::array<BranchMatch, 4> branches{};  // ordered by prediction index
  double cost = 0.0;  // Σ |computed − predicted| / |predicted|
  bool ambiguous = false;  // runner-up assignment within 1% of the best
  bool low_mu = false;     // μ < 100 or cost > 0.5: expansions not yet accurate
};

// Exhaustive minimum-cost bijection from computed roots to predictions.
BranchReport match_branches(const RootSet& computed, const std::array<BranchPrediction, 4>& predicted, double mu,
                            double k);

// |Re λ|·|Im λ|^k. Throws InvalidParameters for a real root.
double sharpness_product(Complex root, double k);

}  // namespace cattaneo
