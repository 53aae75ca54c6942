#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamsched/channel.hpp"
#include "beamsched/config.hpp"

namespace beamsched {

// Fixed transmit codebook: C steering vectors at uniform azimuths.
struct Codebook {
  std::vector<CxVector> entries;

  int size() const { return static_cast<int>(entries.size()); }
};

inline Codebook build_codebook(const SystemConfig& config) {
  Codebook codebook;
  codebook.entries.reserve(config.codebook_size_C);
  for (int i = 0; i < config.codebook_size_C; ++i) {
    const double azimuth = 2.0 * std::numbers::pi * i / config.codebook_size_C;
    codebook.entries.push_back(array_response_ap(azimuth, config));
  }
  return codebook;
}

// |w^H h|^2.
inline double beamforming_gain(const CxVector& w, const CxVector& h) {
  if (w.size() != h.size())
    throw std::invalid_argument("beamforming_gain: vector lengths differ");
  Cx inner{0.0, 0.0};
  for (std::size_t k = 0; k < w.size(); ++k) inner += std::conj(w[k]) * h[k];
  return std::norm(inner);
}

// Index of the codebook entry with the largest gain against h; ties go to
// the smallest index. Returns a 0-based index.
inline int select_beam(const Codebook& codebook, const CxVector& h) {
  if (codebook.size() < 1) throw std::invalid_argument("select_beam: empty codebook");
  bool all_zero = true;
  for (const Cx& c : h)
    if (c != Cx{0.0, 0.0}) all_zero = false;
  if (h.empty() || all_zero) throw std::invalid_argument("select_beam: zero channel vector");

  int best = 0;
  double best_gain = beamforming_gain(codebook.entries[0], h);
  for (int i = 1; i < codebook.size(); ++i) {
    const double gain = beamforming_gain(codebook.entries[i], h);
    if (gain > best_gain) {
      best = i;
      best_gain = gain;
    }
  }
  return best;
}

// Chosen codebook entry per (AP, served UE).
struct BeamTable {
  int ues_per_ap = 0;
  std::vector<int> chosen;  // [ap * M + ue], 0-based codebook indices

  int chosen_index(int ap, int ue) const {
    const std::size_t idx = static_cast<std::size_t>(ap) * ues_per_ap + ue;
    if (ap < 0 || ue < 0 || ue >= ues_per_ap || idx >= chosen.size())
      throw std::out_of_range("BeamTable: (" + std::to_string(ap) + ", " + std::to_string(ue) +
                              ") out of range");
    return chosen[idx];
  }
};

// Beam selection over the serving links only; the interferers' beams follow
// from their own selections.
inline BeamTable build_beam_table(const Codebook& codebook, const ChannelSet& channels) {
  BeamTable table;
  table.ues_per_ap = channels.ues_per_ap;
  table.chosen.reserve(static_cast<std::size_t>(channels.num_aps) * channels.ues_per_ap);
  for (int n = 0; n < channels.num_aps; ++n)
    for (int m = 0; m < channels.ues_per_ap; ++m)
      table.chosen.push_back(select_beam(codebook, channels.coeffs(n, {n, m})));
  return table;
}

}  // namespace beamsched
