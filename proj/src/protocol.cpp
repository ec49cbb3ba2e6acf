#include "otoclock/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace otoclock {

BranchedState init_branched(const StateVector& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("init_branched: initial state must be normalized");
  BranchedState bs;
  bs.fwd = psi0;
  bs.bwd = StateVector{psi0.space, Vec::Zero(psi0.amp.size())};
  bs.forward_clock = 0;
  return bs;
}

BranchedState hadamard_clock(const BranchedState& bs, double dtheta_h) {
  if (bs.forward_clock != 0 || kernels::norm2(bs.bwd.amp) != 0.0)
    throw std::invalid_argument("hadamard_clock: expected a freshly initialized state");
  const double s = std::sin(dtheta_h);
  BranchedState out;
  // the branch that will receive the first conditional operator carries
  // clock label |1_a> and is the one evolved forward
  out.fwd = StateVector{bs.fwd.space, std::sqrt(0.5 * (1.0 + s)) * bs.fwd.amp};
  out.bwd = StateVector{bs.fwd.space, std::sqrt(0.5 * (1.0 - s)) * bs.fwd.amp};
  out.forward_clock = 1;
  return out;
}

BranchedState flip_clock(const BranchedState& bs, double dtheta) {
  const cxd swap_amp(std::cos(0.5 * dtheta), 0.0);
  const cxd stay_amp(0.0, -std::sin(0.5 * dtheta));
  BranchedState out;
  out.forward_clock = bs.forward_clock;
  out.fwd = StateVector{bs.fwd.space, swap_amp * bs.bwd.amp + stay_amp * bs.fwd.amp};
  out.bwd = StateVector{bs.bwd.space, swap_amp * bs.fwd.amp + stay_amp * bs.bwd.amp};
  return out;
}

BranchedState conditional_apply(const BranchedState& bs, const Operator& op, Branch which) {
  BranchedState out = bs;
  if (which == Branch::Fwd)
    out.fwd = apply(op, bs.fwd);
  else
    out.bwd = apply(op, bs.bwd);
  return out;
}

double measure_clock(const BranchedState& bs, char axis) {
  // fwd carries clock label bs.forward_clock
  const StateVector& b1 = bs.forward_clock == 1 ? bs.fwd : bs.bwd;
  const StateVector& b0 = bs.forward_clock == 1 ? bs.bwd : bs.fwd;
  const cxd ov = 2.0 * inner(b0, b1);
  if (axis == 'x') return ov.real();
  if (axis == 'y') return ov.imag();
  throw std::invalid_argument("measure_clock: axis must be 'x' or 'y'");
}

ProtocolResult run_oto_protocol(const ProtocolSpec& spec) {
  const EigenSystem es = spectral_decompose(spec.hamiltonian);
  return run_oto_protocol(spec, es);
}

ProtocolResult run_oto_protocol(const ProtocolSpec& spec, const EigenSystem& es) {
  if (spec.t < 0.0) throw std::invalid_argument("run_oto_protocol: negative time");
  if (es.source_uid != spec.hamiltonian.uid())
    throw std::invalid_argument("run_oto_protocol: eigensystem belongs to a different operator");

  BranchedState bs = init_branched(spec.psi0);
  bs = hadamard_clock(bs, spec.errors.hadamard);
  bs = conditional_apply(bs, spec.o1, Branch::Fwd);
  bs = conditional_propagate(es, bs, spec.t);
  bs = conditional_apply(bs, spec.o2, Branch::Fwd);
  bs = flip_clock(bs, spec.errors.flip1);
  bs = conditional_propagate(es, bs, 2.0 * spec.t);
  bs = flip_clock(bs, spec.errors.flip2);
  bs = conditional_apply(bs, spec.o2, Branch::Bwd);
  bs = conditional_propagate(es, bs, spec.t);
  bs = conditional_apply(bs, spec.o1, Branch::Bwd);

  ProtocolResult res;
  const StateVector& b1 = bs.forward_clock == 1 ? bs.fwd : bs.bwd;
  const StateVector& b0 = bs.forward_clock == 1 ? bs.bwd : bs.fwd;
  res.branch_overlap = 2.0 * inner(b0, b1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  res.tau_x = spec.axis != MeasureAxis::Y ? res.branch_overlap.real() : nan;
  res.tau_y = spec.axis != MeasureAxis::X ? res.branch_overlap.imag() : nan;
  res.otoc = spec.axis == MeasureAxis::Both ? res.branch_overlap : cxd(nan, nan);

  res.norm_fwd = std::sqrt(kernels::norm2(bs.fwd.amp));
  res.norm_bwd = std::sqrt(kernels::norm2(bs.bwd.amp));
  // total norm is conserved only when the inserted operators are unitary;
  // otherwise the check is skipped and flagged as such
  res.norm_checked = spec.operators_unitary;
  const double total = res.norm_fwd * res.norm_fwd + res.norm_bwd * res.norm_bwd;
  res.norm_ok = !res.norm_checked || std::abs(total - 1.0) <= 1e-10;
  return res;
}

double noise_bound(double dtheta1, double dtheta2) {
  const double s1 = std::abs(std::sin(dtheta1));
  const double s2 = std::abs(std::sin(dtheta2));
  const double h1 = std::sin(0.5 * dtheta1) * std::sin(0.5 * dtheta1);
  const double h2 = std::sin(0.5 * dtheta2) * std::sin(0.5 * dtheta2);
  return s1 + s2 + s1 * s2 + h1 * (1.0 + s2) + h2 * (1.0 + s1) + h1 * h2;
}

double snr(double dtheta1, double dtheta2, double overlap_abs) {
  if (overlap_abs < 0.0) throw std::invalid_argument("snr: negative overlap magnitude");
  const double c1 = std::cos(0.5 * dtheta1), c2 = std::cos(0.5 * dtheta2);
  const double denom = std::abs(std::sin(dtheta1)) + std::abs(std::sin(dtheta2));
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return c1 * c1 * c2 * c2 * overlap_abs / denom;
}

}  // namespace otoclock
