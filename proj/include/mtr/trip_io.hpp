#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mtr/trip.hpp"

namespace mtr {

// One trip per line. Keys follow the parameter symbols: kind, id, type, o,
// d, n, z, p, delta, alpha, beta, gamma, theta, pi_hat. See
// docs/trip_format.md.
std::string trip_to_json_line(const DriverTrip& driver);
std::string trip_to_json_line(const RiderTrip& rider);

// Parses a batch; derived fields missing from the file are computed from the
// network and every trip is validated. Errors carry the line number.
TripSet parse_trips(std::istream& in, const TransitNetwork& net);
TripSet load_trips(const std::filesystem::path& path, const TransitNetwork& net);

void write_trips(std::ostream& out, const TripSet& trips);
void save_trips(const std::filesystem::path& path, const TripSet& trips);

}  // namespace mtr
