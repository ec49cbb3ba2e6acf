#pragma once

// Sector-resolved spectra and the comparisons that validate the effective
// Hamiltonians against the microscopic ones: manifold classification by
// conserved excitation content, centroid-aligned level matching, the
// degeneracy/chirality fingerprint of the one-photon ring, and the
// first-order Schrieffer-Wolff generator with its consistency residuals.

#include <cstdint>
#include <utility>
#include <vector>

#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"
#include "otoclock/models.hpp"

namespace otoclock {

struct LevelInfo {
  double energy = 0.0;
  double boson_mean = 0.0;    // <total boson number>
  double excited_mean = 0.0;  // <number of qubits up>; |0> counts as up
  int boson_label = 0;        // nearest integers; sharp iff both within 0.4
  int excited_label = 0;
  bool sharp = true;
};

struct SectorSpectrum {
  int n_a = 0;
  SpacePtr space;  // clock site removed
  EigenSystem es;
  std::vector<LevelInfo> levels;  // ascending energy, aligned with es columns
};

// Restrict h to clock sector n_a and diagonalize. Spaces without a clock are
// taken whole (n_a must be 0 then). Labels classify each eigenvector by its
// boson and qubit content; hybridization moves the means off the integers a
// little, rounding recovers the manifold.
SectorSpectrum sector_spectrum(const Operator& h, int n_a,
                               std::int64_t dense_cap = 8192);

// Emax - Emin over the levels labelled (boson_label, excited_label).
// Throws if the manifold has fewer than two levels.
double manifold_splitting(const SectorSpectrum& s, int boson_label,
                          int excited_label);

// Distinct (boson_label, excited_label) pairs present, sorted.
std::vector<std::pair<int, int>> manifold_labels(const SectorSpectrum& s);

enum class OffsetPolicy {
  None,              // compare raw energies
  ManifoldCentroid,  // shift each model manifold onto the exact centroid first
};

struct LevelComparison {
  int boson_label = 0;
  int excited_label = 0;
  double e_exact = 0.0;
  double e_model = 0.0;  // after the offset shift, if any
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / |e_exact|
  bool excluded = false; // |e_exact| below 1e-6 * span; skipped in max_rel_err
};

struct SpectraComparison {
  std::vector<LevelComparison> levels;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;  // over non-excluded levels
  int n_compared = 0;
  int n_excluded = 0;
};

// Pair up the listed manifolds level by level (both sides ascending) and
// collect the errors. Throws if a manifold is missing on either side or the
// two sides disagree on its size.
SpectraComparison compare_spectra(const SectorSpectrum& exact,
                                  const SectorSpectrum& model,
                                  const std::vector<std::pair<int, int>>& manifolds,
                                  OffsetPolicy offset);

// Convenience: compare every manifold the model spectrum has.
SpectraComparison compare_spectra(const SectorSpectrum& exact,
                                  const SectorSpectrum& model,
                                  OffsetPolicy offset);

// First-order Schrieffer-Wolff generator of the local scheme in clock sector
// n_a, on the microscopic space with the clock removed:
//   S = sum_k (g_k / Delta_na) [ (b_l + b_r) sigma^+_k - (b^dag_l + b^dag_r) sigma^-_k ]
// Anti-Hermitian; [H0, S] = V, so e^{S} H e^{-S} = H0 + (1/2)[S, V] + O(g^3).
Operator sw_generator_first_order(const ModelParams& p, int n_a);

struct SwCheck {
  // || e^S H e^{-S} - (H0 + (1/2)[S,V]) ||_F over the clock sector
  double residual_full = 0.0;
  // the same difference restricted to the all-qubits-down block; the leading
  // (1/3)[S,[S,V]] term has odd qubit parity, so this is one order smaller
  double residual_projected = 0.0;
  // (1/3) || [S,[S,V]] ||_F, the expected size of residual_full
  double cubic_reference = 0.0;
  double g_over_delta = 0.0;  // max_k g_k / |Delta_na|
};

// Conjugates the microscopic sector Hamiltonian by e^{S} and measures how far
// it is from the second-order effective form. residual_full shrinks like g^3
// (cubic_reference tracks it), residual_projected like g^4.
SwCheck sw_consistency_check(const ModelParams& p, int n_a,
                             std::int64_t dense_cap = 4096);

struct RingSignature {
  int n_a = 0;
  std::vector<double> manifold_energies;  // one-photon, qubits down, ascending
  double splitting = 0.0;                 // max - min of the manifold
  int ground_degeneracy = 0;              // cluster within tol of the bottom
  bool ambiguous = false;                 // some gap sat near the cluster tol
  bool ground_is_chiral_pair = false;     // degenerate doublet at k = +-2pi/3
  // weight of the expected Bloch state(s) inside the ground cluster; the bare
  // plane waves lose O((g/Delta)^2), dressing by e^{S} restores it
  double overlap_bare = 0.0;
  double overlap_dressed = 0.0;
};

// Diagonalizes the microscopic ring in clock sector n_a and fingerprints its
// one-photon manifold: level pattern, ground degeneracy, and how well the
// ground cluster matches the Bloch states the effective hopping model picks
// (k = 0 for positive hopping sign, the +-2pi/3 pair for negative).
RingSignature ring_signature(const ModelParams& p, int n_a,
                             std::int64_t dense_cap = 8192);

}  // namespace otoclock
