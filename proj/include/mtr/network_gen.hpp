#pragma once

#include <cstdint>

#include "mtr/network.hpp"

namespace mtr {

// Layout knobs for the synthetic hub-and-spoke city: one downtown hub,
// two airports and thirteen communities, each area a small street grid.
struct NetworkGenConfig {
  std::uint64_t seed = 1;
  int grid_size = 5;               // grid_size x grid_size locations per area
  double grid_spacing_m = 500.0;   // distance between neighbouring grid nodes
  double local_speed_mps = 7.0;    // streets inside an area
  double arterial_speed_mps = 11.0;
  double expressway_speed_mps = 17.0;
  double position_jitter_m = 150.0;  // seeded perturbation of area centres
  double arterial_reach_m = 8500.0;  // areas closer than this get an arterial link
};

NetworkSpec generate_network_spec(const NetworkGenConfig& config);

}  // namespace mtr
