#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamsched/scenario.hpp"
#include "beamsched/sequences.hpp"

namespace beamsched {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Received power in linear units: tx power times beamforming gain divided by
// path loss. The dB form of the link budget is used only at this boundary.
inline double received_power_watts(double tx_power_dbm, double gain, double loss_db) {
  return dbm_to_watts(tx_power_dbm) * gain / db_to_linear(loss_db);
}

// Serving and interfering links use the identical budget; only the beam and
// the channel differ.
inline double received_power_watts(const Scenario& scenario, int tx_ap, UeId victim,
                                   const CxVector& beam) {
  const double gain = beamforming_gain(beam, scenario.channels.coeffs(tx_ap, victim));
  const double loss_db = path_loss_db(distance(scenario.deployment, tx_ap, victim), scenario.config);
  return received_power_watts(scenario.config.total_tx_power, gain, loss_db);
}

namespace detail {

inline void check_joint(const Scenario& scenario, const JointSchedule& joint) {
  if (static_cast<int>(joint.size()) != scenario.config.num_aps_N)
    throw std::invalid_argument("joint schedule: expected one sequence per AP");
  for (const BeamSequence& sequence : joint)
    if (static_cast<int>(sequence.size()) != scenario.config.num_ues_per_ap_M)
      throw std::invalid_argument("joint schedule: sequence length differs from M");
}

}  // namespace detail

// SINR for the UE served by `ap` in `slot`: every other AP contributes the
// power of the beam aimed at its own UE scheduled in the same slot.
inline double slot_sinr(const Scenario& scenario, const JointSchedule& joint, int ap, int slot) {
  detail::check_joint(scenario, joint);
  const int num_aps = scenario.config.num_aps_N;
  const int slots = scenario.config.num_ues_per_ap_M;
  if (ap < 0 || ap >= num_aps) throw std::out_of_range("slot_sinr: AP index out of range");
  if (slot < 0 || slot >= slots) throw std::out_of_range("slot_sinr: slot index out of range");

  const UeId served{ap, joint[ap][slot]};
  const double signal =
      received_power_watts(scenario, ap, served, scenario.beam(ap, served.ue));
  double interference = 0.0;
  for (int other = 0; other < num_aps; ++other) {
    if (other == ap) continue;
    const int other_ue = joint[other][slot];
    interference += received_power_watts(scenario, other, served, scenario.beam(other, other_ue));
  }
  return signal / (interference + scenario.noise_watts);
}

// Spectral efficiency of one slot, bits/s/Hz.
inline double slot_utility(const Scenario& scenario, const JointSchedule& joint, int ap, int slot) {
  return std::log2(1.0 + slot_sinr(scenario, joint, ap, slot));
}

// Mean slot utility over one AP's scheduling cycle.
inline double cycle_utility(const Scenario& scenario, const JointSchedule& joint, int ap) {
  const int slots = scenario.config.num_ues_per_ap_M;
  double sum = 0.0;
  for (int slot = 0; slot < slots; ++slot) sum += slot_utility(scenario, joint, ap, slot);
  return sum / slots;
}

// Network objective: mean cycle utility over APs. This is what the
// exhaustive search maximizes and what the CDFs sample.
inline double network_utility(const Scenario& scenario, const JointSchedule& joint) {
  const int num_aps = scenario.config.num_aps_N;
  double sum = 0.0;
  for (int ap = 0; ap < num_aps; ++ap) sum += cycle_utility(scenario, joint, ap);
  return sum / num_aps;
}

struct UtilityReport {
  std::vector<std::vector<double>> slot_sinr;  // [ap][slot], linear
  std::vector<std::vector<double>> slot_se;    // [ap][slot], bits/s/Hz
  std::vector<double> cycle_utility;           // [ap]
  double network_utility = 0.0;
};

inline UtilityReport evaluate_schedule(const Scenario& scenario, const JointSchedule& joint) {
  detail::check_joint(scenario, joint);
  for (const BeamSequence& sequence : joint)
    if (!is_valid_sequence(sequence))
      throw std::invalid_argument("evaluate_schedule: sequence is not a permutation");
  const int num_aps = scenario.config.num_aps_N;
  const int slots = scenario.config.num_ues_per_ap_M;
  UtilityReport report;
  report.slot_sinr.assign(num_aps, std::vector<double>(slots, 0.0));
  report.slot_se.assign(num_aps, std::vector<double>(slots, 0.0));
  report.cycle_utility.assign(num_aps, 0.0);
  for (int ap = 0; ap < num_aps; ++ap) {
    double sum = 0.0;
    for (int slot = 0; slot < slots; ++slot) {
      const double sinr = slot_sinr(scenario, joint, ap, slot);
      report.slot_sinr[ap][slot] = sinr;
      report.slot_se[ap][slot] = std::log2(1.0 + sinr);
      sum += report.slot_se[ap][slot];
    }
    report.cycle_utility[ap] = sum / slots;
    report.network_utility += report.cycle_utility[ap];
  }
  report.network_utility /= num_aps;
  return report;
}

// Flat dump: one row per (ap, slot), then per-AP cycle rows and one network
// row. Indices are 1-based in the file.
inline void write_utility_report(std::ostream& out, const UtilityReport& report) {
  out << "kind,ap,slot,sinr,spectral_efficiency\n";
  for (std::size_t ap = 0; ap < report.slot_se.size(); ++ap)
    for (std::size_t slot = 0; slot < report.slot_se[ap].size(); ++slot)
      out << "slot," << ap + 1 << ',' << slot + 1 << ','
          << detail::format_double(report.slot_sinr[ap][slot]) << ','
          << detail::format_double(report.slot_se[ap][slot]) << '\n';
  for (std::size_t ap = 0; ap < report.cycle_utility.size(); ++ap)
    out << "cycle," << ap + 1 << ",,," << detail::format_double(report.cycle_utility[ap]) << '\n';
  out << "network,,,," << detail::format_double(report.network_utility) << '\n';
}

}  // namespace beamsched
