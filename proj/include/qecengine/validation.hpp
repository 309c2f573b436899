// Acceptance checks: the simulator against the leading-order closed forms,
// the first and second laws, and the error-correction property.

#pragma once

#include "qecengine/sweep.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qecengine {

struct CriterionResult {
  std::string id;  // "AC-1" .. "AC-8"
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  std::vector<std::string> notices;  // skipped checks and other non-failures
  double seconds = 0.0;
};

struct ValidationOptions {
  std::uint64_t seed = 42;
  std::size_t random_samples = 1000;  // per code
  std::size_t jobs = 1;
  // Mutation hook: when non-zero the bath coupling used by every simulated
  // cycle is gamma * (1 + gad_perturbation). The closed forms are untouched,
  // so ledger checks are expected to fail.
  double gad_perturbation = 0.0;
};

/// The noise channel every validation cycle uses.
NoiseChannel validation_noise(const ValidationOptions& options);

CriterionResult check_classical_ledger(const ValidationOptions& options);    // AC-1
CriterionResult check_laws(const ValidationOptions& options);                // AC-2
CriterionResult check_shor_ledger(const ValidationOptions& options);         // AC-3
CriterionResult check_system_energy(const ValidationOptions& options);       // AC-4
CriterionResult check_fidelity_scaling(const ValidationOptions& options);    // AC-5
CriterionResult check_efficiency(const ValidationOptions& options);          // AC-6
CriterionResult check_error_correction(const ValidationOptions& options);    // AC-7
/// AC-8. `elapsed_before` is the wall time already spent on other criteria.
CriterionResult check_performance(const ValidationOptions& options, double elapsed_before);

/// Runs the selected criteria ("AC-1" .. "AC-8"; empty = all) in order.
/// Throws std::invalid_argument on an unknown id.
std::vector<CriterionResult> run_validation(const ValidationOptions& options, std::span<const std::string> ids = {});

/// "AC-3 PASS  Shor ledger (12.4 s)".
std::string format_result_line(const CriterionResult& result);

}  // namespace qecengine
