#pragma once

// Umbrella header for the beam-sequence scheduling simulator.

#include "beamsched/beamforming.hpp"
#include "beamsched/channel.hpp"
#include "beamsched/config.hpp"
#include "beamsched/deployment.hpp"
#include "beamsched/harness.hpp"
#include "beamsched/rng.hpp"
#include "beamsched/scenario.hpp"
#include "beamsched/schedulers.hpp"
#include "beamsched/sequences.hpp"
#include "beamsched/utility.hpp"
