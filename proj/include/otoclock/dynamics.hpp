#pragma once

// Exact time evolution by spectral decomposition: H = V diag(lam) V^dag,
// e^{-iHt} psi = V diag(e^{-i lam t}) V^dag psi. The eigensystem is computed
// once per Hamiltonian and reused across segments and time points.

#include "otoclock/branched_state.hpp"
#include "otoclock/hilbert.hpp"

namespace otoclock {

struct EigenSystem {
  SpacePtr space;
  Eigen::VectorXd evals;  // ascending
  Mat vecs;               // columns are eigenvectors, phase-canonicalized
  Mat vecs_adj;           // vecs^dag, materialized so both half-transforms
                          // run as contiguous per-element dot products
  std::uint64_t source_uid = 0;
};

// Dense Hermitian eigendecomposition. Eigenvalues ascend; each eigenvector's
// largest-magnitude component is rotated to be real positive so repeated runs
// give identical matrices. Throws on non-Hermitian input (max defect 1e-9
// relative to the largest element) or dimension above `dense_cap`.
EigenSystem spectral_decompose(const Operator& h, std::int64_t dense_cap = 8192);

enum class Direction { Forward, Backward };

// e^{-iHt} (Forward) or e^{+iHt} (Backward) applied to `state`; t must be >= 0.
StateVector propagate(const EigenSystem& es, const StateVector& state, double t,
                      Direction dir);

// Internal-friendly variant: signed time, e^{-iH t_signed}.
void evolve_signed(const EigenSystem& es, const Vec& in, double t_signed, Vec& out);

// One conditional segment: fwd branch gets e^{-iHt}, bwd branch e^{+iHt}.
BranchedState conditional_propagate(const EigenSystem& es, const BranchedState& bs,
                                    double t);

}  // namespace otoclock
