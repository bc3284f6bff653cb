#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtr/hypergraph.hpp"
#include "mtr/network.hpp"
#include "mtr/trip.hpp"

namespace mtr {

// Independent checker for matches. It re-simulates each stored route from
// raw network queries and recomputes every rider's transit baseline; it
// shares no code with the feasibility engine.
class Revalidator {
 public:
  Revalidator(const TransitNetwork& net, const TripSet& trips);

  // Violations of capacity, time, stop and acceptance constraints, or
  // disagreement with the stored times. Empty when the match is valid.
  std::vector<std::string> check(const Match& m) const;

  // check() for every match plus trip disjointness across matches.
  std::vector<std::string> check_solution(std::span<const Match> chosen) const;

 private:
  const TransitNetwork& net_;
  std::unordered_map<TripId, const DriverTrip*> drivers_;
  std::unordered_map<TripId, const RiderTrip*> riders_;
};

}  // namespace mtr
