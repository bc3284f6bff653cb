#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "mtr/network.hpp"
#include "mtr/network_gen.hpp"

namespace mtr::test {

// The default synthetic city, built once per test binary.
inline const TransitNetwork& city() {
  static const TransitNetwork net(generate_network_spec(NetworkGenConfig{}));
  return net;
}

// Four locations on a straight road, 100 s apart in both directions, with a
// train line between the two ends.
inline NetworkSpec line_spec() {
  NetworkSpec s;
  s.areas = {{0, "west", AreaKind::kCommunity}, {1, "centre", AreaKind::kDowntown}};
  for (int i = 0; i < 4; ++i) s.locations.push_back({LocationId{i}, {100.0 * i, 0.0}, i < 2 ? 0 : 1});
  for (int i = 0; i < 3; ++i) {
    s.road_edges.push_back({LocationId{i}, LocationId{i + 1}, 100});
    s.road_edges.push_back({LocationId{i + 1}, LocationId{i}, 100});
  }
  s.stations = {{StationId{0}, LocationId{0}, TransitMode::kTrain, "west"},
                {StationId{1}, LocationId{3}, TransitMode::kTrain, "centre"}};
  s.transit_lines = {{"line", TransitMode::kTrain, {StationId{0}, StationId{1}}}};
  return s;
}

// All-pairs shortest paths by Floyd-Warshall over an explicit edge list.
inline std::vector<std::vector<Seconds>> floyd(std::size_t n,
                                               const std::vector<std::tuple<int, int, Seconds>>& edges) {
  std::vector<std::vector<Seconds>> d(n, std::vector<Seconds>(n, kUnreachable));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [u, v, w] : edges) d[u][v] = std::min(d[u][v], w);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] >= kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] < kUnreachable) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

}  // namespace mtr::test
