#pragma once

// Turns a configuration into a finished experiment: builds the model, runs
// the requested sweep, and renders a CSV table ('#' metadata lines, then a
// header row, %.17g values) plus a JSON summary. Output depends only on the
// configuration, never on thread count or wall clock.

#include <string>

#include <json.hpp>

#include "otoclock/config.hpp"
#include "otoclock/hilbert.hpp"

namespace otoclock {

struct RunResult {
  std::string table;    // CSV text
  nlohmann::json meta;  // machine-readable summary of the same run
};

// Parse "kind@site" (e.g. "sigma_z@2", "n@0", "a@1") into a single-site
// operator on `space`.
Operator operator_from_spec(const SpacePtr& space, const std::string& spec);

// True for the specs that name unitary operators (the Pauli kinds).
bool operator_spec_unitary(const std::string& spec);

// "neel" | "all_down" | "all_up" | "one_photon@j" | "basis:o0,o1,..."
StateVector state_from_spec(const SpacePtr& space, const std::string& spec);

RunResult run_experiment(const ExperimentConfig& cfg);

// Runs and writes the table (format=csv) or the summary (format=json) to
// cfg.out, or stdout when cfg.out is empty. Returns the path written, empty
// for stdout.
std::string run_and_write(const ExperimentConfig& cfg);

}  // namespace otoclock
