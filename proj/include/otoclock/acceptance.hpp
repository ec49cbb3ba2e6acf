#pragma once

// End-to-end acceptance checks. Each criterion is a self-contained function
// with its tolerances pinned inside; the suite binary prints one pass/fail
// line per criterion and exits nonzero if any fails.

#include <cstdint>
#include <string>
#include <vector>

namespace otoclock::acceptance {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured numbers against the pinned tolerances
  double seconds = 0.0;
};

struct SuiteOptions {
  int chain_l = 8;  // switch-sweep chain length; 12 is the slow stress setting
  std::uint64_t seed = 2026;
};

// 1: interferometer output equals the spectral-oracle OTOC on random
//    few-qubit instances with random unitary probes
CriterionResult check_protocol_matches_oracle(const SuiteOptions& opt);
// 2: dimer effective vs microscopic spectra, splitting 2g^2/Delta, sectors
CriterionResult check_dimer_spectra(const SuiteOptions& opt);
// 3: ring one-photon manifold: degeneracy pattern, splitting, chirality
CriterionResult check_ring_chirality(const SuiteOptions& opt);
// 4: clock sector 1 carries exactly -H of sector 0 for the effective models
CriterionResult check_sign_flip_antisymmetry(const SuiteOptions& opt);
// 5: imperfect-switch ensembles hurt scrambled states more than early ones
CriterionResult check_switch_error_sensitivity(const SuiteOptions& opt);
// 6: pulse-angle errors stay inside the analytic noise bound and the engine
//    matches an explicit clock-in-the-Hilbert-space simulation
CriterionResult check_pulse_noise_bound(const SuiteOptions& opt);
// 7: Loschmidt echo limits (zero perturbation; commuting perturbation)
CriterionResult check_loschmidt_limits(const SuiteOptions& opt);
// 8: Schrieffer-Wolff residual scales as g^3 sector-wide (g^4 projected)
CriterionResult check_sw_residual_scaling(const SuiteOptions& opt);

std::vector<CriterionResult> run_all(const SuiteOptions& opt);

}  // namespace otoclock::acceptance
