#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamsched/config.hpp"
#include "beamsched/rng.hpp"

namespace beamsched {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// UE (ap, ue) is the ue-th terminal served by AP ap. Indices are 0-based.
struct UeId {
  int ap = 0;
  int ue = 0;
};

// Network geometry: APs on a horizontal line, one disc of UEs per AP.
struct Deployment {
  std::vector<Point> ap_positions;               // size N
  std::vector<std::vector<Point>> ue_positions;  // [ap][ue], N x M

  int num_aps() const { return static_cast<int>(ap_positions.size()); }
  int ues_per_ap() const {
    return ue_positions.empty() ? 0 : static_cast<int>(ue_positions.front().size());
  }
};

// Links shorter than this are rejected at generation; the path-loss model
// is referenced to 1 m.
inline constexpr double kMinLinkDistance = 1.0;

namespace detail {

inline double point_distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace detail

// APs are spaced inter_cell_distance apart on the x axis starting at the
// origin. Each AP's UEs are drawn uniformly over a disc of the cell radius
// centred on it, re-drawn while any AP is closer than 1 m.
inline Deployment generate_deployment(const SystemConfig& config, Rng& rng) {
  config.validate();

  Deployment deployment;
  deployment.ap_positions.reserve(config.num_aps_N);
  for (int n = 0; n < config.num_aps_N; ++n)
    deployment.ap_positions.push_back({config.inter_cell_distance * n, 0.0});

  const double radius = config.radius();
  deployment.ue_positions.assign(config.num_aps_N, {});
  for (int n = 0; n < config.num_aps_N; ++n) {
    auto& ues = deployment.ue_positions[n];
    ues.reserve(config.num_ues_per_ap_M);
    for (int m = 0; m < config.num_ues_per_ap_M; ++m) {
      const Point centre = deployment.ap_positions[n];
      Point candidate;
      int attempts = 0;
      bool too_close = true;
      while (too_close) {
        if (++attempts > 10000)
          throw std::runtime_error("generate_deployment: cannot place a UE at least 1 m from every AP");
        const double r = radius * std::sqrt(rng.uniform01());
        const double phi = rng.uniform_angle();
        candidate = {centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)};
        too_close = false;
        for (const Point& ap : deployment.ap_positions)
          if (detail::point_distance(ap, candidate) < kMinLinkDistance) too_close = true;
      }
      ues.push_back(candidate);
    }
  }
  return deployment;
}

inline double distance(const Deployment& deployment, int ap, UeId ue) {
  if (ap < 0 || ap >= deployment.num_aps())
    throw std::out_of_range("distance: AP index " + std::to_string(ap) + " out of range");
  if (ue.ap < 0 || ue.ap >= deployment.num_aps() || ue.ue < 0 || ue.ue >= deployment.ues_per_ap())
    throw std::out_of_range("distance: UE index (" + std::to_string(ue.ap) + ", " +
                            std::to_string(ue.ue) + ") out of range");
  return detail::point_distance(deployment.ap_positions[ap], deployment.ue_positions[ue.ap][ue.ue]);
}

}  // namespace beamsched
