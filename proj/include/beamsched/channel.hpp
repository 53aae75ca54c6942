#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamsched/config.hpp"
#include "beamsched/deployment.hpp"
#include "beamsched/rng.hpp"

namespace beamsched {

using Cx = std::complex<double>;
using CxVector = std::vector<Cx>;

// One scatterer: complex gain, angle of departure at the AP array and angle
// of arrival at the (single-antenna) UE.
struct PathParams {
  Cx gain;
  double departure_angle = 0.0;  // radians, [0, 2*pi)
  double arrival_angle = 0.0;    // radians, [0, 2*pi)
};

struct LinkChannel {
  std::vector<PathParams> paths;
  CxVector coeffs;  // length N_t
};

// Channel vectors for every (transmitting AP, UE) pair. Cross links
// (transmitter other than the serving AP) carry the interference.
struct ChannelSet {
  int num_aps = 0;
  int ues_per_ap = 0;
  int num_antennas = 0;
  std::vector<LinkChannel> links;  // [tx][ue.ap][ue.ue] flattened

  std::size_t link_index(int tx_ap, UeId ue) const {
    if (tx_ap < 0 || tx_ap >= num_aps || ue.ap < 0 || ue.ap >= num_aps || ue.ue < 0 ||
        ue.ue >= ues_per_ap)
      throw std::out_of_range("ChannelSet: link (" + std::to_string(tx_ap) + " -> " +
                              std::to_string(ue.ap) + "," + std::to_string(ue.ue) +
                              ") out of range");
    return (static_cast<std::size_t>(tx_ap) * num_aps + ue.ap) * ues_per_ap + ue.ue;
  }
  const LinkChannel& link(int tx_ap, UeId ue) const { return links[link_index(tx_ap, ue)]; }
  const CxVector& coeffs(int tx_ap, UeId ue) const { return link(tx_ap, ue).coeffs; }
};

// Uniform-linear-array steering vector: entry k is
// (1/sqrt(N_t)) * exp(j k (2*pi/lambda) D sin(angle)), unit norm overall.
inline CxVector array_response_ap(double angle, const SystemConfig& config) {
  const int nt = config.num_tx_antennas_Nt;
  const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
  const double phase_step =
      2.0 * std::numbers::pi / config.wavelength() * config.spacing() * std::sin(angle);
  CxVector response(nt);
  for (int k = 0; k < nt; ++k) response[k] = std::polar(scale, phase_step * k);
  return response;
}

inline std::vector<PathParams> draw_path_params(Rng& rng, const SystemConfig& config) {
  std::vector<PathParams> paths(config.num_paths_L);
  for (auto& path : paths) {
    path.gain = rng.complex_gaussian();
    path.arrival_angle = rng.uniform_angle();
    path.departure_angle = rng.uniform_angle();
  }
  return paths;
}

// h = sqrt(N_t/L) * sum_l alpha_l * conj(a_AP(departure_l)); the UE side is
// the scalar 1 (single receive antenna).
inline CxVector assemble_channel(std::span<const PathParams> paths, const SystemConfig& config) {
  if (paths.empty()) throw std::invalid_argument("assemble_channel: at least one path required");
  const int nt = config.num_tx_antennas_Nt;
  CxVector h(nt, Cx{0.0, 0.0});
  for (const PathParams& path : paths) {
    const CxVector response = array_response_ap(path.departure_angle, config);
    for (int k = 0; k < nt; ++k) h[k] += path.gain * std::conj(response[k]);
  }
  const double scale = std::sqrt(static_cast<double>(nt) / static_cast<double>(paths.size()));
  for (Cx& c : h) c *= scale;
  return h;
}

inline CxVector generate_channel(Rng& rng, const SystemConfig& config) {
  return assemble_channel(draw_path_params(rng, config), config);
}

// Draws every (tx AP, UE) link independently, serving and cross links alike.
inline ChannelSet generate_channel_set(const SystemConfig& config, Rng& rng) {
  config.validate();
  ChannelSet channels;
  channels.num_aps = config.num_aps_N;
  channels.ues_per_ap = config.num_ues_per_ap_M;
  channels.num_antennas = config.num_tx_antennas_Nt;
  channels.links.reserve(static_cast<std::size_t>(config.num_aps_N) * config.num_aps_N *
                         config.num_ues_per_ap_M);
  for (int tx = 0; tx < config.num_aps_N; ++tx)
    for (int n = 0; n < config.num_aps_N; ++n)
      for (int m = 0; m < config.num_ues_per_ap_M; ++m) {
        LinkChannel link;
        link.paths = draw_path_params(rng, config);
        link.coeffs = assemble_channel(link.paths, config);
        channels.links.push_back(std::move(link));
      }
  return channels;
}

// Close-in log-distance path loss, 1 m reference:
// PL(d) = 32.4 + 20 log10(f_GHz) + 10 n log10(d).
inline double path_loss_db(double distance_m, const SystemConfig& config) {
  if (!(distance_m >= kMinLinkDistance))
    throw std::domain_error("path_loss_db: distance must be at least 1 m");
  const double f_ghz = config.carrier_frequency / 1e9;
  return 32.4 + 20.0 * std::log10(f_ghz) + 10.0 * config.path_loss_exponent * std::log10(distance_m);
}

// Thermal noise over the full band: K_B * T * B.
inline double noise_power_watts(const SystemConfig& config) {
  return kBoltzmann * config.noise_temperature_T * config.bandwidth_B;
}

namespace detail {

inline std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace detail

// Coefficient dump for regression goldens, one antenna tap per row.
inline void write_channel_set(std::ostream& out, const ChannelSet& channels) {
  out << "tx_ap,ue_ap,ue_index,antenna,re,im\n";
  for (int tx = 0; tx < channels.num_aps; ++tx)
    for (int n = 0; n < channels.num_aps; ++n)
      for (int m = 0; m < channels.ues_per_ap; ++m) {
        const CxVector& h = channels.coeffs(tx, {n, m});
        for (int k = 0; k < channels.num_antennas; ++k)
          out << tx << ',' << n << ',' << m << ',' << k << ','
              << detail::format_double(h[k].real()) << ',' << detail::format_double(h[k].imag())
              << '\n';
      }
}

// Rebuilds the coefficient grid from a dump. Path parameters are not part of
// the dump, so the returned links carry coefficients only.
inline ChannelSet read_channel_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != "tx_ap,ue_ap,ue_index,antenna,re,im")
    throw std::runtime_error("read_channel_set: bad header");
  struct Row {
    int tx, n, m, k;
    Cx value;
  };
  std::vector<Row> rows;
  int num_aps = 0, ues_per_ap = 0, num_antennas = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row row;
    double re = 0.0, im = 0.0;
    char comma = ',';
    std::istringstream fields(line);
    fields >> row.tx >> comma >> row.n >> comma >> row.m >> comma >> row.k >> comma >> re >>
        comma >> im;
    if (!fields) throw std::runtime_error("read_channel_set: bad row: " + line);
    row.value = {re, im};
    num_aps = std::max({num_aps, row.tx + 1, row.n + 1});
    ues_per_ap = std::max(ues_per_ap, row.m + 1);
    num_antennas = std::max(num_antennas, row.k + 1);
    rows.push_back(row);
  }
  ChannelSet channels;
  channels.num_aps = num_aps;
  channels.ues_per_ap = ues_per_ap;
  channels.num_antennas = num_antennas;
  const std::size_t expected =
      static_cast<std::size_t>(num_aps) * num_aps * ues_per_ap;
  channels.links.assign(expected, LinkChannel{{}, CxVector(num_antennas, Cx{0.0, 0.0})});
  if (rows.size() != expected * num_antennas)
    throw std::runtime_error("read_channel_set: incomplete coefficient grid");
  for (const Row& row : rows)
    channels.links[channels.link_index(row.tx, {row.n, row.m})].coeffs[row.k] = row.value;
  return channels;
}

}  // namespace beamsched
