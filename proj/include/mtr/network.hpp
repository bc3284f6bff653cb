#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtr/types.hpp"

namespace mtr {

enum class TransitMode { kTrain, kBus };
enum class AreaKind { kCommunity, kDowntown, kAirport };

const char* to_string(TransitMode mode);
const char* to_string(AreaKind kind);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Location {
  LocationId id;
  Point coords;
  int area = -1;  // index into NetworkSpec::areas, -1 when unassigned
};

struct Area {
  int id = -1;
  std::string name;
  AreaKind kind = AreaKind::kCommunity;
};

struct Station {
  StationId id;
  LocationId location;
  TransitMode mode = TransitMode::kTrain;
  std::string name;
};

struct RoadEdge {
  LocationId from;
  LocationId to;
  Seconds seconds = 0;
};

struct TransitLine {
  std::string name;
  TransitMode mode = TransitMode::kTrain;
  std::vector<StationId> stations;
};

// Dimensionless factors applied to car travel time on transit hops.
struct ModeMultipliers {
  double train = 1.15;
  double bus = 2.0;
};

// Plain description of a network. Location and station ids are dense
// (0..n-1, listed in order) so they double as array indices.
struct NetworkSpec {
  std::vector<Area> areas;
  std::vector<Location> locations;
  std::vector<Station> stations;
  std::vector<RoadEdge> road_edges;
  std::vector<TransitLine> transit_lines;
  ModeMultipliers multipliers;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One invariant violation found in a NetworkSpec. `index` is the element
// position within `section`, or npos for section-wide problems.
struct SpecIssue {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::string section;
  std::size_t index = npos;
  std::string message;
};

std::vector<SpecIssue> validate_network_spec(const NetworkSpec& spec);

// Immutable road + transit network answering the travel-time queries used
// by the matching engine. Shortest-path trees are computed on first use and
// memoized per source; concurrent queries are safe.
class TransitNetwork {
 public:
  explicit TransitNetwork(NetworkSpec spec);
  ~TransitNetwork();
  TransitNetwork(TransitNetwork&&) noexcept;
  TransitNetwork& operator=(TransitNetwork&&) noexcept;
  TransitNetwork(const TransitNetwork&) = delete;
  TransitNetwork& operator=(const TransitNetwork&) = delete;

  // Shortest private-car time over the road graph.
  Seconds car_time(LocationId u, LocationId v) const;

  // Sum of car_time over consecutive waypoints.
  Seconds path_car_time(std::span<const LocationId> path) const;

  // Shortest time over the transit-line graph. Each hop costs the line's
  // multiplier times the car time of that hop (rounded to whole seconds);
  // transfers are free. Throws NetworkError when s2 is unreachable.
  Seconds transit_time(StationId s1, StationId s2) const;

  // Fastest pure-transit trip between two locations: bus-factor access leg to
  // a boarding station, transit ride, bus-factor egress leg.
  Seconds best_transit_route_time(LocationId o, LocationId d) const;

  // Cost of one hop of the given mode whose car time is `car_seconds`.
  Seconds hop_cost(TransitMode mode, Seconds car_seconds) const;

  bool contains(LocationId id) const;
  bool contains(StationId id) const;

  std::size_t location_count() const { return spec_.locations.size(); }
  std::size_t station_count() const { return spec_.stations.size(); }
  std::size_t area_count() const { return spec_.areas.size(); }

  const NetworkSpec& spec() const { return spec_; }
  const Station& station(StationId id) const;
  const Location& location(LocationId id) const;
  const Area& area(int id) const;

  // Locations assigned to an area, in id order.
  std::span<const LocationId> area_locations(int area) const;
  // Location of the area closest to its centroid.
  LocationId area_center(int area) const;

 private:
  struct Cache;

  void check_location(LocationId id, const char* what) const;
  void check_station(StationId id, const char* what) const;
  const std::vector<Seconds>& forward_tree(LocationId source) const;
  const std::vector<Seconds>& transit_reach(LocationId origin) const;

  NetworkSpec spec_;
  std::vector<std::vector<LocationId>> area_members_;
  std::vector<LocationId> area_centers_;
  // Adjacency for Dijkstra: (to, seconds) pairs per location.
  std::vector<std::vector<std::pair<std::int32_t, Seconds>>> out_edges_;
  // Station-to-station transit times, row-major.
  std::vector<Seconds> transit_matrix_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace mtr
