#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cattaneo/report.hpp"

namespace cattaneo {

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
};

struct Timing {
  std::string label;
  double seconds = 0.0;
  double budget = 0.0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckRecord> checks;  // deterministic; go into the manifest
  std::vector<FitRecord> fits;
  std::vector<Timing> timings;      // wall clock; kept out of the manifest

  [[nodiscard]] bool numeric_pass() const;
  [[nodiscard]] bool within_budget() const;
  [[nodiscard]] bool pass() const { return numeric_pass() && within_budget(); }
};

// Criteria 1..12. Each is independent and seeded from options.seed.
CriterionResult check_characteristic_coefficients(const AcceptanceOptions& o);  // 1
CriterionResult check_root_quality(const AcceptanceOptions& o);                  // 2
CriterionResult check_dissipation(const AcceptanceOptions& o);                   // 3
CriterionResult check_branches_inertial(const AcceptanceOptions& o);             // 4
CriterionResult check_branches_non_inertial(const AcceptanceOptions& o);         // 5
CriterionResult check_sharpness(const AcceptanceOptions& o);                     // 6
CriterionResult check_resolvent_infinity(const AcceptanceOptions& o);            // 7
CriterionResult check_resolvent_zero(const AcceptanceOptions& o);                // 8
CriterionResult check_decay_rate(const AcceptanceOptions& o);                    // 9
CriterionResult check_static_inverse(const AcceptanceOptions& o);                // 10
CriterionResult check_interpolation(const AcceptanceOptions& o);                 // 11
CriterionResult check_contraction(const AcceptanceOptions& o);                   // 12

std::vector<CriterionResult> run_criteria(const AcceptanceOptions& o);

// Manifest over the given criteria; files are attached by the caller.
RunManifest acceptance_manifest(const nlohmann::json& config, const std::vector<CriterionResult>& results);

// Criterion 13: reruns 1..12 with a different thread count and compares the
// SHA-256 of both manifests.
CriterionResult check_reproducibility(const AcceptanceOptions& o, const nlohmann::json& config,
                                      const std::vector<CriterionResult>& first);

// One "PASS"/"FAIL" line with the measured values and runtime.
std::string format_line(const CriterionResult& r);

// Per-criterion JSON including timings, for the human-facing report.
nlohmann::json report_json(const std::vector<CriterionResult>& results);

}  // namespace cattaneo
