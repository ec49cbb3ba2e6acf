#pragma once

// Ready-made configurations for the three benchmark setups: the two-cavity
// dimer spectra, the three-cavity ring chirality check, and the disordered
// spin chain used for switch-error sweeps.

#include <string>
#include <vector>

#include "otoclock/config.hpp"

namespace otoclock {

struct PresetInfo {
  std::string name;
  std::string summary;
};

std::vector<PresetInfo> preset_list();

// Throws std::invalid_argument for unknown names.
ExperimentConfig preset_config(const std::string& name);

}  // namespace otoclock
