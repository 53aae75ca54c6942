#pragma once

#include "beamsched/beamforming.hpp"
#include "beamsched/channel.hpp"
#include "beamsched/config.hpp"
#include "beamsched/deployment.hpp"
#include "beamsched/rng.hpp"

namespace beamsched {

// One trial's frozen inputs. Everything is drawn once, then shared
// read-only by all schedulers so their outcomes stay comparable.
struct Scenario {
  SystemConfig config;
  Deployment deployment;
  ChannelSet channels;
  Codebook codebook;
  BeamTable beams;
  double noise_watts = 0.0;

  const CxVector& beam(int ap, int ue) const {
    return codebook.entries[static_cast<std::size_t>(beams.chosen_index(ap, ue))];
  }
};

inline Scenario make_scenario(const SystemConfig& config, Rng& rng) {
  config.validate();
  Scenario scenario;
  scenario.config = config;
  scenario.deployment = generate_deployment(config, rng);
  scenario.channels = generate_channel_set(config, rng);
  scenario.codebook = build_codebook(config);
  scenario.beams = build_beam_table(scenario.codebook, scenario.channels);
  scenario.noise_watts = noise_power_watts(config);
  return scenario;
}

}  // namespace beamsched
