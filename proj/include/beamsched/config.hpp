#pragma once

#include <cctype>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamsched {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K

// Every knob of one simulated scenario. Defaults describe the small 2-AP,
// 5-UE case; antenna_spacing_D and cell_radius use 0 to mean "derived"
// (half a wavelength and half the inter-cell distance, respectively).
struct SystemConfig {
  double carrier_frequency = 60e9;     // Hz
  double bandwidth_B = 500e6;          // Hz
  double total_tx_power = 30.0;        // dBm, spread over the full band
  double inter_cell_distance = 400.0;  // m
  int num_aps_N = 2;
  int num_ues_per_ap_M = 5;
  int num_tx_antennas_Nt = 8;
  int codebook_size_C = 16;
  int num_paths_L = 3;
  double noise_temperature_T = 300.0;  // K
  double antenna_spacing_D = 0.0;      // m; 0 -> half wavelength
  double path_loss_exponent = 2.5;
  double cell_radius = 0.0;            // m; 0 -> inter_cell_distance / 2
  double learning_weight_w = 0.15;
  int max_learning_iters_T = 200;
  int greedy_iters_NDG = 10;
  std::uint64_t rng_seed = 1;

  double wavelength() const { return kSpeedOfLight / carrier_frequency; }
  double spacing() const { return antenna_spacing_D > 0.0 ? antenna_spacing_D : 0.5 * wavelength(); }
  double radius() const { return cell_radius > 0.0 ? cell_radius : 0.5 * inter_cell_distance; }

  void validate() const;
};

inline void SystemConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid configuration: " + what); };
  if (!(carrier_frequency > 0.0)) fail("carrier_frequency must be positive");
  if (!(bandwidth_B > 0.0)) fail("bandwidth_B must be positive");
  if (!std::isfinite(total_tx_power)) fail("total_tx_power must be finite");
  if (!(inter_cell_distance > 0.0)) fail("inter_cell_distance must be positive");
  if (num_aps_N < 1) fail("num_aps_N must be at least 1");
  if (num_ues_per_ap_M < 1) fail("num_ues_per_ap_M must be at least 1");
  // 13! no longer fits the sequence-index range used by the schedulers
  if (num_ues_per_ap_M > 12) fail("num_ues_per_ap_M must not exceed 12");
  if (num_tx_antennas_Nt < 1) fail("num_tx_antennas_Nt must be at least 1");
  if (codebook_size_C < 1) fail("codebook_size_C must be at least 1");
  if (num_paths_L < 1) fail("num_paths_L must be at least 1");
  if (!(noise_temperature_T > 0.0)) fail("noise_temperature_T must be positive");
  if (antenna_spacing_D < 0.0 || !std::isfinite(antenna_spacing_D)) fail("antenna_spacing_D must be non-negative");
  if (!(path_loss_exponent > 0.0)) fail("path_loss_exponent must be positive");
  if (cell_radius < 0.0 || !std::isfinite(cell_radius)) fail("cell_radius must be non-negative");
  // UEs keep at least 1 m from their AP, so the cell must extend past that
  if (!(radius() > 1.0)) fail("cell radius must exceed 1 m");
  if (!(learning_weight_w > 0.0 && learning_weight_w < 1.0)) fail("learning_weight_w must lie in (0, 1)");
  if (max_learning_iters_T < 1) fail("max_learning_iters_T must be at least 1");
  if (greedy_iters_NDG < 1) fail("greedy_iters_NDG must be at least 1");
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double_value(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw std::invalid_argument("config key '" + key + "': cannot parse number '" + value + "'");
  return v;
}

inline int parse_int_value(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || v < INT_MIN || v > INT_MAX)
    throw std::invalid_argument("config key '" + key + "': cannot parse integer '" + value + "'");
  return static_cast<int>(v);
}

inline std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  if (!value.empty() && value[0] == '-')
    throw std::invalid_argument("config key '" + key + "': cannot parse unsigned integer '" + value + "'");
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument("config key '" + key + "': cannot parse unsigned integer '" + value + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// Flat `key = value` format, one pair per line; '#' starts a comment.
// Keys mirror the SystemConfig field names exactly. Unknown and duplicate
// keys are errors; optional keys fall back to the documented defaults.
inline SystemConfig parse_config(const std::string& text) {
  static const std::vector<std::string> required = {
      "carrier_frequency", "bandwidth_B",      "total_tx_power", "inter_cell_distance",
      "num_aps_N",         "num_ues_per_ap_M", "num_tx_antennas_Nt",
      "codebook_size_C",   "num_paths_L",      "noise_temperature_T"};

  SystemConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    if (!seen.insert(key).second)
      throw std::invalid_argument("config key '" + key + "' appears more than once");

    if (key == "carrier_frequency") config.carrier_frequency = detail::parse_double_value(key, value);
    else if (key == "bandwidth_B") config.bandwidth_B = detail::parse_double_value(key, value);
    else if (key == "total_tx_power") config.total_tx_power = detail::parse_double_value(key, value);
    else if (key == "inter_cell_distance") config.inter_cell_distance = detail::parse_double_value(key, value);
    else if (key == "num_aps_N") config.num_aps_N = detail::parse_int_value(key, value);
    else if (key == "num_ues_per_ap_M") config.num_ues_per_ap_M = detail::parse_int_value(key, value);
    else if (key == "num_tx_antennas_Nt") config.num_tx_antennas_Nt = detail::parse_int_value(key, value);
    else if (key == "codebook_size_C") config.codebook_size_C = detail::parse_int_value(key, value);
    else if (key == "num_paths_L") config.num_paths_L = detail::parse_int_value(key, value);
    else if (key == "noise_temperature_T") config.noise_temperature_T = detail::parse_double_value(key, value);
    else if (key == "antenna_spacing_D") config.antenna_spacing_D = detail::parse_double_value(key, value);
    else if (key == "path_loss_exponent") config.path_loss_exponent = detail::parse_double_value(key, value);
    else if (key == "cell_radius") config.cell_radius = detail::parse_double_value(key, value);
    else if (key == "learning_weight_w") config.learning_weight_w = detail::parse_double_value(key, value);
    else if (key == "max_learning_iters_T") config.max_learning_iters_T = detail::parse_int_value(key, value);
    else if (key == "greedy_iters_NDG") config.greedy_iters_NDG = detail::parse_int_value(key, value);
    else if (key == "rng_seed") config.rng_seed = detail::parse_u64_value(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }

  std::string missing;
  for (const auto& key : required)
    if (!seen.count(key)) missing += missing.empty() ? key : ", " + key;
  if (!missing.empty()) throw std::invalid_argument("missing required config keys: " + missing);

  config.validate();
  return config;
}

inline SystemConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace beamsched
