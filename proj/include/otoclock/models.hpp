#pragma once

// Hamiltonian builders for the clock-controlled sign-flip schemes:
//  * "nonlocal": N qubits dispersively coupled through one common coupler
//    cavity b, with a cross-Kerr term eta * a^dag a * b^dag b to the clock
//    ancilla; integrating out b gives an all-to-all flip-flop model whose
//    overall sign is slaved to the clock photon number.
//  * "local": a chain/ring of N cavities bridged by qubit couplers, the clock
//    dispersively shifting every qubit (chi * a^dag a * sum sigma_z); second
//    order in g_b/Delta_b gives a boson hopping model with a clock-controlled
//    sign.
//  * a disordered Heisenberg chain used as the scrambling testbed.
//
// All builders return Hermitian operators (verified on construction) and
// conserve the clock photon number exactly.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "otoclock/hilbert.hpp"

namespace otoclock {

struct ModelParams {
  double omega_a = 0.0;  // clock ancilla frequency (MHz)
  double omega_b = 0.0;  // cavity frequency (MHz)
  double epsilon = 0.0;  // qubit splitting (MHz)
  double eta = 0.0;      // clock-coupler cross-Kerr (nonlocal scheme)
  double chi = 0.0;      // clock-qubit dispersive shift (local scheme)
  double g_a = 0.0;      // clock-qubit JC coupling behind chi (local scheme)
  std::vector<double> g_site;  // per-qubit (nonlocal) / per-bond (local) couplings
  int n = 0;             // active sites: qubits (nonlocal) or cavities (local)
  int n_max = 1;         // boson cutoff
  bool hardcore = false; // force n_max = 1 on the cavities
  bool periodic = false; // ring instead of open chain (local scheme)
};

// Strict JSON (de)serialization: exactly these lower_snake_case keys; unknown
// keys raise, missing keys keep defaults.
void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);

// Bare detunings and their clock-sector-resolved versions. The dispersive
// term chi * a^dag a * sigma_z moves the qubit flip cost by 2*chi per clock
// photon, hence the factor 2 in the local case.
double delta_b(const ModelParams& p);                 // epsilon - omega_b
double delta_a(const ModelParams& p);                 // epsilon - omega_a
double detuning_nonlocal(const ModelParams& p, int n_a);  // delta_b - eta*n_a
double detuning_local(const ModelParams& p, int n_a);     // delta_b + 2*chi*n_a

enum class Frame {
  Lab,       // keep bare frequencies
  Rotating,  // drop them; only the clock-conditioned induced terms remain
};

// Space [Boson(coupler), N x Qubit, Clock].
Operator build_nonlocal_microscopic(const ModelParams& p);

// Space [N x Qubit, Clock]; coupler integrated out at second order. Sector
// n_a uses detuning_nonlocal(p, n_a); include_zz adds the quartic
// sigma_z sigma_z cross terms (2 g_j^2 g_j'^2 / Delta^3).
Operator build_nonlocal_effective(const ModelParams& p, bool include_zz, Frame frame);

// Space [N x Boson, M x Qubit, Clock] with M = N (ring) or N-1 (open chain);
// bond k couples cavities k and k+1 through qubit k.
Operator build_local_microscopic(const ModelParams& p);

// Space [N x Boson, Clock]; qubits integrated out, all of them down. order is
// 2 or 4; sector n_a uses detuning_local(p, n_a).
Operator build_local_effective(const ModelParams& p, int order, Frame frame);

// Second order without projecting the qubits out: hopping conditioned on the
// bond qubit, qubit flip-flop bus terms, Lamb shifts and photon-dependent
// dispersive shifts, on the full microscopic space (lab frame).
Operator build_complete_second_order(const ModelParams& p);

// H = sum_i vec(sigma_i).vec(sigma_{i+1}) + sum_i h_i sigma_z_i, open chain,
// Pauli convention (two-site spectrum {-3, 1, 1, 1} at h = 0).
Operator build_disordered_heisenberg(int l, const std::vector<double>& fields);

enum class ConditionModel { Nonlocal, Local, LocalJC };

// Enforce the exact sign-flip condition by overwriting the dependent field:
//   Nonlocal: eta   = 2*delta_b
//   Local:    chi   = -delta_b
//   LocalJC:  g_a   = sqrt(-delta_a*delta_b)  (requires delta_a*delta_b < 0),
//             and chi = -delta_b so downstream builders stay exact.
// Idempotent.
ModelParams solve_sign_condition(ModelParams p, ConditionModel model);

struct DisorderSpec {
  enum class Dist { Uniform, Gaussian };
  enum class Target { GSite, FieldH };
  Dist dist = Dist::Uniform;
  double a = 0.0;  // uniform: lo, gaussian: mean
  double b = 0.0;  // uniform: hi, gaussian: std
  Target target = Target::FieldH;
  std::uint64_t seed = 0;
};

// Counter-based draws: sample k depends only on (seed, k), so any slice or
// parallel order reproduces the serial sequence.
std::vector<double> sample_disorder(const DisorderSpec& spec, int count);

}  // namespace otoclock
