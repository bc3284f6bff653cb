#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtr/network.hpp"
#include "mtr/types.hpp"

namespace mtr {

// Type1: driver collects riders at their origins and drops all of them at a
// station. Type2: driver collects all riders at a station and drops each at
// their destination. Either: the trip accepts both.
enum class MatchType { kType1, kType2, kEither };

const char* to_string(MatchType type);
std::optional<MatchType> parse_match_type(std::string_view text);

// True when a trip announcing `announced` can be served as `concrete`.
inline bool accepts(MatchType announced, MatchType concrete) {
  return announced == MatchType::kEither || announced == concrete;
}

class TripError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DriverTrip {
  TripId id;
  LocationId origin;
  LocationId destination;
  int capacity = 1;
  Seconds detour_limit = 0;
  std::vector<LocationId> preferred_path;  // empty when not given
  int stop_limit = 1;
  Seconds earliest_departure = 0;
  Seconds latest_arrival = 0;
  Seconds max_trip_time = 0;
  MatchType match_type = MatchType::kEither;
};

struct RiderTrip {
  TripId id;
  LocationId origin;
  LocationId destination;
  Seconds earliest_departure = 0;
  Seconds latest_arrival = 0;
  Seconds max_trip_time = 0;
  double acceptance_rate = 0.8;
  Seconds baseline_transit_time = 0;
  MatchType match_type = MatchType::kEither;
};

struct RideshareRoute {
  TripId rider;
  TripId driver;
  StationId station;
  Seconds total_time = 0;
  std::vector<Seconds> leg_times;
};

// floor(theta * baseline); the epsilon absorbs binary representation error
// of theta so 0.8 * 4500 stays 3600.
Seconds acceptance_threshold(const RiderTrip& rider);
Seconds acceptance_threshold(double theta, Seconds baseline);

// t(p_i) + z_i when a preferred path is given, else t(o_i, d_i) + z_i.
Seconds driver_max_trip_time(const DriverTrip& driver, const TransitNetwork& net);

// Fill derived fields that are left at their defaults: rider baseline and
// gamma, driver gamma.
void complete_rider(RiderTrip& rider, const TransitNetwork& net);
void complete_driver(DriverTrip& driver, const TransitNetwork& net);

// Throw TripError describing the first invariant violation.
void validate_driver(const DriverTrip& driver, const TransitNetwork& net);
void validate_rider(const RiderTrip& rider, const TransitNetwork& net);
void validate_route(const RideshareRoute& route, const RiderTrip& rider);

// Announcement batch for one interval.
struct TripSet {
  std::vector<DriverTrip> drivers;
  std::vector<RiderTrip> riders;
};

// Validates every trip and checks ids are unique across drivers and riders.
void validate_trip_set(const TripSet& trips, const TransitNetwork& net);

// Where each parameter symbol of a trip announcement lives.
struct SymbolField {
  std::string_view symbol;
  std::string_view owner;
  std::string_view field;
};

inline constexpr std::array<SymbolField, 14> kTripSymbols{{
    {"o_i", "DriverTrip", "origin"},
    {"d_i", "DriverTrip", "destination"},
    {"n_i", "DriverTrip", "capacity"},
    {"z_i", "DriverTrip", "detour_limit"},
    {"p_i", "DriverTrip", "preferred_path"},
    {"delta_i", "DriverTrip", "stop_limit"},
    {"alpha_i", "DriverTrip", "earliest_departure"},
    {"beta_i", "DriverTrip", "latest_arrival"},
    {"gamma_i", "DriverTrip", "max_trip_time"},
    {"alpha_j", "RiderTrip", "earliest_departure"},
    {"beta_j", "RiderTrip", "latest_arrival"},
    {"gamma_j", "RiderTrip", "max_trip_time"},
    {"theta_j", "RiderTrip", "acceptance_rate"},
    {"pi_hat_j", "RiderTrip", "baseline_transit_time"},
}};

}  // namespace mtr
