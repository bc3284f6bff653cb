#include "mtr/network_gen.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <utility>

namespace mtr {

namespace {

struct AreaTemplate {
  const char* name;
  AreaKind kind;
  double x_km;
  double y_km;
};

// Index 0 is downtown, 1-2 airports, the rest communities.
constexpr std::array<AreaTemplate, 16> kAreas{{
    {"downtown", AreaKind::kDowntown, 0.0, 0.0},
    {"airport-north", AreaKind::kAirport, -19.0, 11.5},
    {"airport-south", AreaKind::kAirport, -13.0, -10.5},
    {"north-1", AreaKind::kCommunity, 0.5, 8.5},
    {"north-2", AreaKind::kCommunity, 1.0, 15.0},
    {"northwest-1", AreaKind::kCommunity, -6.0, 6.5},
    {"northwest-2", AreaKind::kCommunity, -11.5, 8.5},
    {"west-1", AreaKind::kCommunity, -8.0, 0.5},
    {"west-2", AreaKind::kCommunity, -13.5, 1.0},
    {"southwest-1", AreaKind::kCommunity, -5.5, -6.5},
    {"south-1", AreaKind::kCommunity, 1.0, -8.5},
    {"south-2", AreaKind::kCommunity, 2.0, -15.0},
    {"far-northwest", AreaKind::kCommunity, -6.0, 13.5},
    {"west-central", AreaKind::kCommunity, -10.5, -3.5},
    {"far-southwest", AreaKind::kCommunity, -5.0, -13.0},
    {"lakeshore-north", AreaKind::kCommunity, 5.0, 11.5},
}};

struct LineTemplate {
  const char* name;
  TransitMode mode;
  std::vector<int> areas;
};

const std::vector<LineTemplate>& line_templates() {
  static const std::vector<LineTemplate> lines{
      {"red", TransitMode::kTrain, {4, 3, 0, 10, 11}},
      {"blue", TransitMode::kTrain, {1, 6, 5, 0}},
      {"green", TransitMode::kTrain, {8, 7, 0}},
      {"orange", TransitMode::kTrain, {2, 9, 0}},
      {"bus-far-northwest", TransitMode::kBus, {12, 5}},
      {"bus-west-central", TransitMode::kBus, {13, 7}},
      {"bus-far-southwest", TransitMode::kBus, {14, 9}},
      {"bus-lakeshore", TransitMode::kBus, {15, 3}},
      {"bus-crosstown", TransitMode::kBus, {5, 7, 9}},
  };
  return lines;
}

}  // namespace

NetworkSpec generate_network_spec(const NetworkGenConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> jitter(-config.position_jitter_m, config.position_jitter_m);
  std::uniform_real_distribution<double> weight_noise(0.9, 1.1);

  NetworkSpec spec;
  const int g = config.grid_size;
  std::vector<Point> centers;
  std::vector<std::vector<LocationId>> members(kAreas.size());

  for (std::size_t a = 0; a < kAreas.size(); ++a) {
    const auto& t = kAreas[a];
    spec.areas.push_back({static_cast<int>(a), t.name, t.kind});
    Point c{t.x_km * 1000.0 + jitter(rng), t.y_km * 1000.0 + jitter(rng)};
    centers.push_back(c);
    const double half = (g - 1) * config.grid_spacing_m / 2.0;
    for (int r = 0; r < g; ++r) {
      for (int col = 0; col < g; ++col) {
        LocationId id{static_cast<std::int32_t>(spec.locations.size())};
        spec.locations.push_back(
            {id, {c.x - half + col * config.grid_spacing_m, c.y - half + r * config.grid_spacing_m}, static_cast<int>(a)});
        members[a].push_back(id);
      }
    }
  }

  auto add_both = [&](LocationId u, LocationId v, double meters, double speed) {
    const double base = meters / speed;
    spec.road_edges.push_back({u, v, std::max<Seconds>(1, std::llround(base * weight_noise(rng)))});
    spec.road_edges.push_back({v, u, std::max<Seconds>(1, std::llround(base * weight_noise(rng)))});
  };
  auto distance = [](const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); };

  for (std::size_t a = 0; a < kAreas.size(); ++a) {
    for (int r = 0; r < g; ++r) {
      for (int col = 0; col < g; ++col) {
        const auto u = members[a][r * g + col];
        if (col + 1 < g) add_both(u, members[a][r * g + col + 1], config.grid_spacing_m, config.local_speed_mps);
        if (r + 1 < g) add_both(u, members[a][(r + 1) * g + col], config.grid_spacing_m, config.local_speed_mps);
      }
    }
  }

  // Links between areas attach at the closest pair of grid nodes.
  auto link = [&](int a, int b, double speed) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<LocationId, LocationId> ends;
    for (auto u : members[a]) {
      for (auto v : members[b]) {
        double d = distance(spec.locations[u.value].coords, spec.locations[v.value].coords);
        if (d < best) {
          best = d;
          ends = {u, v};
        }
      }
    }
    add_both(ends.first, ends.second, best, speed);
  };

  std::set<std::pair<int, int>> linked;
  for (const auto& line : line_templates()) {
    if (line.mode != TransitMode::kTrain) continue;
    for (std::size_t k = 0; k + 1 < line.areas.size(); ++k) {
      auto key = std::minmax(line.areas[k], line.areas[k + 1]);
      if (linked.insert(key).second) link(key.first, key.second, config.expressway_speed_mps);
    }
  }
  for (std::size_t a = 0; a < kAreas.size(); ++a) {
    for (std::size_t b = a + 1; b < kAreas.size(); ++b) {
      if (distance(centers[a], centers[b]) > config.arterial_reach_m) continue;
      auto key = std::make_pair(static_cast<int>(a), static_cast<int>(b));
      if (linked.insert(key).second) link(key.first, key.second, config.arterial_speed_mps);
    }
  }

  // One station per area on the grid node nearest the centre; train when the
  // area sits on a train line, otherwise a bus stop.
  std::vector<bool> on_train(kAreas.size(), false);
  for (const auto& line : line_templates()) {
    if (line.mode == TransitMode::kTrain) {
      for (int a : line.areas) on_train[a] = true;
    }
  }
  std::vector<StationId> station_of(kAreas.size());
  for (std::size_t a = 0; a < kAreas.size(); ++a) {
    LocationId best_loc = members[a].front();
    double best = std::numeric_limits<double>::infinity();
    for (auto id : members[a]) {
      double d = distance(spec.locations[id.value].coords, centers[a]);
      if (d < best - 1e-9) {
        best = d;
        best_loc = id;
      }
    }
    StationId sid{static_cast<std::int32_t>(spec.stations.size())};
    station_of[a] = sid;
    spec.stations.push_back({sid, best_loc, on_train[a] ? TransitMode::kTrain : TransitMode::kBus,
                             std::string(kAreas[a].name) + (on_train[a] ? " station" : " stop")});
  }
  for (const auto& line : line_templates()) {
    TransitLine tl{line.name, line.mode, {}};
    for (int a : line.areas) tl.stations.push_back(station_of[a]);
    spec.transit_lines.push_back(std::move(tl));
  }
  return spec;
}

}  // namespace mtr
