#pragma once

// Experiment configuration: a strict JSON schema (unknown keys are errors,
// missing keys keep defaults) plus a stable hash of the canonical dump so a
// run can be tied to the exact configuration that produced it.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "otoclock/models.hpp"
#include "otoclock/protocol.hpp"

namespace otoclock {

enum class ExperimentKind {
  Oracle,       // reference OTOC values straight from the eigensystem
  Protocol,     // the two-branch clock interferometer, with fixed pulse errors
  SwitchSweep,  // ensemble of imperfect forward/backward switches
  PulseSweep,   // random pulse-angle errors against the analytic noise bound
  Spectra,      // microscopic vs effective sector spectra
  RingCheck,    // degeneracy/chirality fingerprint of the three-cavity ring
  Loschmidt,    // echo under a Hamiltonian perturbation
};

enum class ModelKind {
  NonlocalMicroscopic,
  NonlocalEffective,
  LocalMicroscopic,
  LocalEffective,
  CompleteSecondOrder,
  HeisenbergChain,
};

std::string to_string(ExperimentKind k);
std::string to_string(ModelKind k);
ExperimentKind experiment_from_string(const std::string& s);
ModelKind model_from_string(const std::string& s);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Oracle;
  ModelKind model = ModelKind::HeisenbergChain;
  ModelParams params;

  // Heisenberg chain testbed
  int heisenberg_l = 8;
  std::vector<double> fields;  // explicit on-site fields; beats `disorder`
  bool use_disorder = false;
  DisorderSpec disorder;

  // operators and states, e.g. "sigma_z@1", "neel"
  std::string o1 = "sigma_z@1";
  std::string o2 = "sigma_z@6";
  std::string initial_state = "neel";
  std::string perturbation = "sigma_z@0";  // Loschmidt direction
  double perturbation_scale = 0.0;

  std::vector<double> times{1.0};
  std::vector<double> deltas{0.0};  // switch-error standard deviations
  int n_samples = 100;
  double beta = -1.0;  // >= 0 switches the oracle to the thermal average

  PulseErrors pulses;
  double pulse_scale = 0.3;  // |delta theta| cap for random pulse draws
  int n_pulse_draws = 200;

  int clock_sector = 0;
  int effective_order = 2;
  bool include_zz = true;
  std::string frame = "lab";  // "lab" or "rotating"

  std::uint64_t seed = 1;
  int threads = 0;  // 0 = leave the OpenMP default
  std::string out;  // output file; empty writes to stdout
  std::string format = "csv";  // "csv" or "json"
};

// Strict: every key must be known, nested blocks included.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// FNV-1a over the canonical (sorted-key) dump of config_to_json.
std::uint64_t config_hash(const ExperimentConfig& c);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace otoclock
