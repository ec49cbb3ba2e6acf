#pragma once

// Composite Hilbert spaces built from qubit, truncated-boson and clock-ancilla
// sites, plus sparse operators and state vectors living on them.
//
// Conventions, used everywhere downstream:
//   * site 0 is the slowest-varying index (the last site has stride 1);
//   * qubit basis: |0> is "up" (sigma_z eigenvalue +1), |1> is "down";
//   * the clock ancilla is a two-level photon register: |0_a> = zero photons,
//     and tau_z = 1 - 2 a^dag a, so |0_a> has tau_z = +1;
//   * frequencies in MHz (hbar = 1), times in microseconds.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "otoclock/kernels.hpp"

namespace otoclock {

using cxd = std::complex<double>;
using kernels::Mat;
using kernels::SpMatR;
using kernels::Vec;

enum class SiteKind { Qubit, Boson, Clock };

struct SiteSpec {
  SiteKind kind;
  int n_max = 1;  // boson cutoff; ignored for Qubit/Clock (always 2-dim)
};

inline SiteSpec qubit_site() { return {SiteKind::Qubit, 1}; }
inline SiteSpec boson_site(int n_max) { return {SiteKind::Boson, n_max}; }
inline SiteSpec clock_site() { return {SiteKind::Clock, 1}; }

class HilbertSpace {
 public:
  // Validates the layout: at least one site, at most one Clock, boson
  // cutoffs >= 1. Throws std::invalid_argument otherwise.
  static std::shared_ptr<const HilbertSpace> make(std::vector<SiteSpec> sites);

  std::int64_t dim() const { return dim_; }
  int n_sites() const { return static_cast<int>(sites_.size()); }
  const SiteSpec& site(int k) const { return sites_.at(k); }
  int site_dim(int k) const;
  // Index of the Clock site, or -1 if the space has none.
  int clock_site_index() const { return clock_; }
  std::vector<int> sites_of_kind(SiteKind kind) const;

  // Basis index <-> occupation tuple (one entry per site).
  std::int64_t index_of(const std::vector<int>& occ) const;
  std::vector<int> occupation_of(std::int64_t index) const;

  bool same_layout(const HilbertSpace& other) const;

 private:
  explicit HilbertSpace(std::vector<SiteSpec> sites);
  std::vector<SiteSpec> sites_;
  std::vector<std::int64_t> strides_;
  std::int64_t dim_ = 0;
  int clock_ = -1;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

SpacePtr make_space(std::vector<SiteSpec> sites);

struct StateVector {
  SpacePtr space;
  Vec amp;

  double norm() const { return std::sqrt(kernels::norm2(amp)); }
};

// Basis state |occ>.
StateVector basis_state(const SpacePtr& space, const std::vector<int>& occ);

// Single-site operator kinds. Validity depends on the site kind: sigma_* on
// qubits, ladder/number on bosons, tau_*/number on the clock, projectors on
// any two-level site.
enum class LocalKind {
  SigmaX,
  SigmaY,
  SigmaZ,
  SigmaPlus,
  SigmaMinus,
  A,
  Adag,
  N,
  Proj0,
  Proj1,
  TauX,
  TauY,
  TauZ,
};

class Operator {
 public:
  Operator() = default;
  Operator(SpacePtr space, SpMatR mat, bool hermitian_hint);

  const SpacePtr& space() const { return space_; }
  const SpMatR& sparse() const { return mat_; }
  Mat dense() const { return Mat(mat_); }
  bool hermitian() const { return hermitian_; }
  std::int64_t dim() const { return mat_.rows(); }
  // Unique id per constructed operator; lets caches key on identity.
  std::uint64_t uid() const { return uid_; }

  Operator adjoint() const;
  Operator scaled(cxd factor) const;
  Operator plus(const Operator& other) const;

 private:
  SpacePtr space_;
  SpMatR mat_;
  bool hermitian_ = false;
  std::uint64_t uid_ = 0;
};

// One term of a sum: coeff * factor[0] * factor[1] * ... (operator product,
// applied to kets right-to-left).
struct ProductTerm {
  cxd coeff;
  std::vector<std::pair<int, LocalKind>> factors;  // (site, kind)
};

// Sum of products of single-site operators, embedded in the full space.
// The hermitian hint is verified (max-norm of A - A^dag below 1e-12) and
// construction throws if the claim is false.
Operator compose(const SpacePtr& space, const std::vector<ProductTerm>& terms,
                 bool hermitian_hint = false);

Operator local_operator(const SpacePtr& space, int site, LocalKind kind);
Operator identity_op(const SpacePtr& space);

StateVector apply(const Operator& op, const StateVector& state);
cxd inner(const StateVector& lhs, const StateVector& rhs);  // conjugate-linear in lhs
cxd expectation(const Operator& op, const StateVector& state);

// Projector onto basis states whose summed sigma_z (+1 for |0>, -1 for |1>)
// over `qubit_sites` equals `value`.
Operator projector_total_sz(const SpacePtr& space, const std::vector<int>& qubit_sites,
                            int value);

// The same space with the Clock site removed (order of the rest preserved).
SpacePtr space_without_clock(const SpacePtr& space);

// Restriction of a clock-number-conserving operator to the clock sector n_a,
// as an operator on space_without_clock. Throws if op has weight between
// sectors or the space has no clock.
Operator clock_sector_block(const Operator& op, int n_a);

// Max-norm Hermiticity defect ||A - A^dag||_max.
double hermiticity_defect(const Operator& op);

}  // namespace otoclock
