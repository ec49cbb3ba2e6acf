#pragma once

// Two-branch superposition tracked by the clock interferometer. `fwd` is the
// branch currently evolved with e^{-iHt}, `bwd` the one evolved with e^{+iHt}.
// `forward_clock` records which clock basis state labels the fwd branch: 0
// right after init (the whole state still sits in |0_a>), 1 from the first
// clock pulse on, since the branch that receives the first conditional
// operator is the one taken forward.

#include "otoclock/hilbert.hpp"

namespace otoclock {

struct BranchedState {
  StateVector fwd;
  StateVector bwd;
  int forward_clock = 0;
};

}  // namespace otoclock
