#include "mtr/trip.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

namespace mtr {

const char* to_string(MatchType type) {
  switch (type) {
    case MatchType::kType1:
      return "type1";
    case MatchType::kType2:
      return "type2";
    case MatchType::kEither:
      return "either";
  }
  return "?";
}

std::optional<MatchType> parse_match_type(std::string_view text) {
  if (text == "type1") return MatchType::kType1;
  if (text == "type2") return MatchType::kType2;
  if (text == "either") return MatchType::kEither;
  return std::nullopt;
}

Seconds acceptance_threshold(double theta, Seconds baseline) {
  return static_cast<Seconds>(std::floor(theta * static_cast<double>(baseline) + 1e-9));
}

Seconds acceptance_threshold(const RiderTrip& rider) {
  return acceptance_threshold(rider.acceptance_rate, rider.baseline_transit_time);
}

namespace {

[[noreturn]] void fail(TripId id, const std::string& message) {
  std::ostringstream os;
  os << "trip " << id.value << ": " << message;
  throw TripError(os.str());
}

}  // namespace

Seconds driver_max_trip_time(const DriverTrip& driver, const TransitNetwork& net) {
  if (!net.contains(driver.origin) || !net.contains(driver.destination)) {
    fail(driver.id, "origin or destination not in network");
  }
  if (driver.preferred_path.empty()) return net.car_time(driver.origin, driver.destination) + driver.detour_limit;
  for (auto loc : driver.preferred_path) {
    if (!net.contains(loc)) fail(driver.id, "preferred path has unknown location");
  }
  return net.path_car_time(driver.preferred_path) + driver.detour_limit;
}

void complete_rider(RiderTrip& rider, const TransitNetwork& net) {
  if (!net.contains(rider.origin) || !net.contains(rider.destination)) {
    fail(rider.id, "origin or destination not in network");
  }
  if (rider.baseline_transit_time <= 0) {
    rider.baseline_transit_time = net.best_transit_route_time(rider.origin, rider.destination);
  }
  if (rider.max_trip_time <= 0) rider.max_trip_time = rider.baseline_transit_time;
}

void complete_driver(DriverTrip& driver, const TransitNetwork& net) {
  if (driver.max_trip_time <= 0) driver.max_trip_time = driver_max_trip_time(driver, net);
}

void validate_driver(const DriverTrip& d, const TransitNetwork& net) {
  if (d.id.value < 0) fail(d.id, "negative id");
  if (!net.contains(d.origin) || !net.contains(d.destination)) fail(d.id, "origin or destination not in network");
  if (d.capacity < 1) fail(d.id, "capacity must be at least 1");
  if (d.stop_limit < 1) fail(d.id, "stop limit must be at least 1");
  if (d.detour_limit < 0) fail(d.id, "negative detour limit");
  if (d.earliest_departure >= d.latest_arrival) fail(d.id, "earliest departure must precede latest arrival");
  if (!d.preferred_path.empty() &&
      (d.preferred_path.front() != d.origin || d.preferred_path.back() != d.destination)) {
    fail(d.id, "preferred path must run from origin to destination");
  }
  if (d.max_trip_time != driver_max_trip_time(d, net)) fail(d.id, "max trip time disagrees with path time plus detour");
}

void validate_rider(const RiderTrip& r, const TransitNetwork& net) {
  if (r.id.value < 0) fail(r.id, "negative id");
  if (!net.contains(r.origin) || !net.contains(r.destination)) fail(r.id, "origin or destination not in network");
  if (!(r.acceptance_rate > 0.0 && r.acceptance_rate <= 1.0)) fail(r.id, "acceptance rate must lie in (0, 1]");
  if (r.earliest_departure >= r.latest_arrival) fail(r.id, "earliest departure must precede latest arrival");
  if (r.baseline_transit_time != net.best_transit_route_time(r.origin, r.destination)) {
    fail(r.id, "baseline transit time disagrees with the network");
  }
  if (r.max_trip_time <= 0) fail(r.id, "max trip time must be positive");
}

void validate_route(const RideshareRoute& route, const RiderTrip& rider) {
  Seconds sum = 0;
  for (auto t : route.leg_times) sum += t;
  if (sum != route.total_time) fail(route.rider, "route total differs from its legs");
  if (route.total_time > acceptance_threshold(rider)) fail(route.rider, "route exceeds acceptance threshold");
}

void validate_trip_set(const TripSet& trips, const TransitNetwork& net) {
  std::unordered_set<TripId> seen;
  for (const auto& d : trips.drivers) {
    validate_driver(d, net);
    if (!seen.insert(d.id).second) fail(d.id, "duplicate id");
  }
  for (const auto& r : trips.riders) {
    validate_rider(r, net);
    if (!seen.insert(r.id).second) fail(r.id, "duplicate id");
  }
}

}  // namespace mtr
