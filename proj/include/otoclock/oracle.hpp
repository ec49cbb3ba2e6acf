#pragma once

// Reference OTOC values computed directly from the spectral decomposition,
// with no branched-state bookkeeping. The interferometric protocol is tested
// against these.

#include <complex>
#include <cstdint>

#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"

namespace otoclock {

// Pure-state out-of-time-order correlator
//   F(t) = <L|R>,   |R> = e^{+iHt} O2 e^{-iHt} O1 |psi>,
//                   |L> = O1 e^{+iHt} O2 e^{-iHt} |psi>,
// which is <psi| O2^dag(t) O1^dag O2(t) O1 |psi> with O2(t) = e^{iHt} O2 e^{-iHt}.
// This is exactly the overlap the clock interferometer estimates; for
// Hermitian O1, O2 it reduces to the usual <O2(t) O1 O2(t) O1>.
cxd otoc_pure(const EigenSystem& es, const StateVector& psi, const Operator& o1,
              const Operator& o2, double t);

// Convenience overload that diagonalizes h on the fly.
cxd otoc_pure(const Operator& h, const StateVector& psi, const Operator& o1,
              const Operator& o2, double t);

// Thermal average sum_n w_n F_n(t) over the eigenstates of H, with Gibbs
// weights w_n = e^{-beta (E_n - E_min)} / Z. beta = 0 is the infinite-
// temperature (maximally mixed) average. Throws for beta < 0.
cxd otoc_thermal(const EigenSystem& es, const Operator& o1, const Operator& o2,
                 double t, double beta);

// F(t) with an imperfect forward/backward switch: every backward segment
// (e^{+iHt}) runs for t * (1 + eps) instead of t, the forward segments are
// exact. eps = 0 reproduces otoc_pure bit for bit.
cxd otoc_switch_error(const EigenSystem& es, const StateVector& psi,
                      const Operator& o1, const Operator& o2, double t,
                      double eps);

struct SwitchErrorStats {
  cxd mean;          // ensemble average of the noisy overlap
  cxd pure;          // eps = 0 value
  double rel_abs;    // |mean / pure - 1|
  double rel_re;     // |Re mean - Re pure| / |Re pure|
  double rel_im;     // |Im mean - Im pure| / |Im pure|
  int n_samples;
};

// Averages otoc_switch_error over n_samples draws eps_k ~ Normal(0, delta^2),
// eps_k = delta * gaussian(seed, k). The sample loop may run in parallel but
// the sum is accumulated in index order, so the result does not depend on the
// thread count.
SwitchErrorStats relative_switch_error(const EigenSystem& es,
                                       const StateVector& psi,
                                       const Operator& o1, const Operator& o2,
                                       double t, double delta, int n_samples,
                                       std::uint64_t seed);

struct LoschmidtResult {
  cxd amplitude;  // <psi| e^{+iHt} e^{-i(H+dH)t} |psi>
  double echo;    // |amplitude|^2
};

// Overlap between evolution under H and under H + dH from the same initial
// state. dH = 0 gives amplitude 1; if [H, dH] = 0 and psi is an eigenstate of
// dH with eigenvalue e', the amplitude is e^{-i e' t}.
LoschmidtResult loschmidt_echo(const Operator& h, const Operator& dh,
                               const StateVector& psi, double t);

}  // namespace otoclock
