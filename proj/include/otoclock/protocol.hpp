#pragma once

// Clock-interferometer measurement sequence. The clock ancilla is never
// represented explicitly; the engine tracks the two system branches it
// labels. Sequence (segment times t, 2t, t):
//
//   init |psi>|0_a>  ->  pi/2 clock pulse  ->  O1 on the |1_a> branch
//   ->  evolve t  ->  O2 on the forward branch  ->  pi clock flip
//   ->  evolve 2t  ->  pi clock flip  ->  O2 on the backward branch
//   ->  evolve t  ->  O1 on the backward branch  ->  measure tau_x / tau_y.
//
// With ideal pulses the final state is (|R>|1_a> + |L>|0_a>)/sqrt(2) with
//   |R> = e^{+iHt} O2 e^{-iHt} O1 |psi>,  |L> = O1 e^{+iHt} O2 e^{-iHt} |psi>,
// so <tau_x> + i <tau_y> = <L|R>, the out-of-time-ordered correlator.
//
// Pulse errors: the pi/2 pulse over-rotates by dtheta_h, the two pi flips by
// dtheta1/dtheta2. A mis-set flip leaves amplitude -i*sin(dtheta/2) in the
// branch it should have swapped out.

#include "otoclock/branched_state.hpp"
#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"

namespace otoclock {

struct PulseErrors {
  double hadamard = 0.0;  // dtheta' on the pi/2 pulse
  double flip1 = 0.0;     // dtheta on the first pi flip
  double flip2 = 0.0;     // dtheta on the second pi flip
};

enum class MeasureAxis { X, Y, Both };

struct ProtocolSpec {
  Operator hamiltonian;  // system-only Hamiltonian (clock handled virtually)
  StateVector psi0;      // normalized initial state
  Operator o1, o2;
  double t = 0.0;
  PulseErrors errors;
  MeasureAxis axis = MeasureAxis::Both;
  // O1/O2 only need to be applicable. Norm conservation is a meaningful
  // diagnostic only when they are unitary; clear this to skip that check.
  bool operators_unitary = true;
};

struct ProtocolResult {
  double tau_x = 0.0;
  double tau_y = 0.0;
  cxd otoc{0.0, 0.0};          // tau_x + i tau_y (filled for axis == Both)
  cxd branch_overlap{0.0, 0.0};  // 2 <branch(0_a)|branch(1_a)>, always filled
  double norm_fwd = 0.0, norm_bwd = 0.0;
  bool norm_checked = false;  // false means the check was skipped (non-unitary O)
  bool norm_ok = false;
};

// psi0 must be normalized (1e-10); the state starts entirely in clock |0_a>.
BranchedState init_branched(const StateVector& psi0);

// pi/2 + dtheta_h rotation of the clock out of |0_a>; weight
// sqrt((1 +- sin dtheta_h)/2) lands on the |1_a> / |0_a> branch. Only valid
// straight after init.
BranchedState hadamard_clock(const BranchedState& bs, double dtheta_h);

// pi + dtheta flip: new_fwd = cos(dtheta/2) bwd - i sin(dtheta/2) fwd, and
// symmetrically. dtheta = 0 swaps the branches exactly.
BranchedState flip_clock(const BranchedState& bs, double dtheta);

enum class Branch { Fwd, Bwd };
BranchedState conditional_apply(const BranchedState& bs, const Operator& op, Branch which);

// axis 'x' -> 2 Re <branch(0_a)|branch(1_a)>, axis 'y' -> 2 Im of the same.
double measure_clock(const BranchedState& bs, char axis);

ProtocolResult run_oto_protocol(const ProtocolSpec& spec);
ProtocolResult run_oto_protocol(const ProtocolSpec& spec, const EigenSystem& es);

// Worst-case magnitude of the extra interference terms the two flip errors
// admit into <tau_x>; exact prefactor cos^2(dt1/2) cos^2(dt2/2) times the
// clean overlap is excluded.
double noise_bound(double dtheta1, double dtheta2);

// cos^2(dt1/2) cos^2(dt2/2) |overlap| / (|sin dt1| + |sin dt2|); infinity when
// the denominator vanishes (noiseless pulses).
double snr(double dtheta1, double dtheta2, double overlap_abs);

}  // namespace otoclock
