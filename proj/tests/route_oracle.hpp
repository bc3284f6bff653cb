#pragma once

// Independent route timing and exhaustive match enumeration used as oracles.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "mtr/network.hpp"
#include "mtr/trip.hpp"

namespace mtr::test {

// Times one concrete route by driving it. Type 1 waits at each pickup until
// every rider there is ready; type 2 waits at the station for the driver and
// all riders. Returns false when any constraint fails.
inline bool route_feasible(const TransitNetwork& net, const DriverTrip& d, const std::vector<const RiderTrip*>& rs,
                           MatchType type, StationId s, const std::vector<LocationId>& stops) {
  if (rs.empty() || static_cast<int>(rs.size()) > d.capacity) return false;
  if (stops.empty() || static_cast<int>(stops.size()) > d.stop_limit) return false;
  if (!accepts(d.match_type, type)) return false;
  std::set<LocationId> need;
  for (const auto* r : rs) {
    if (!accepts(r->match_type, type)) return false;
    need.insert(type == MatchType::kType1 ? r->origin : r->destination);
  }
  if (need != std::set<LocationId>(stops.begin(), stops.end()) || need.size() != stops.size()) return false;
  const LocationId sloc = net.station(s).location;
  auto threshold = [](const RiderTrip& r) { return acceptance_threshold(r.acceptance_rate, r.baseline_transit_time); };

  if (type == MatchType::kType1) {
    Seconds clock = d.earliest_departure;
    Seconds drive = 0;
    LocationId at = d.origin;
    for (auto stop : stops) {
      clock += net.car_time(at, stop);
      drive += net.car_time(at, stop);
      at = stop;
      for (const auto* r : rs) {
        if (r->origin == stop) clock = std::max(clock, r->earliest_departure);
      }
    }
    clock += net.car_time(at, sloc);
    drive += net.car_time(at, sloc);
    const Seconds after = net.car_time(sloc, d.destination);
    if (clock + after > d.latest_arrival || drive + after > d.max_trip_time) return false;
    for (const auto* r : rs) {
      // In-vehicle time from the rider's stop to the station along the order.
      Seconds ride = 0;
      bool on = false;
      LocationId prev = d.origin;
      for (auto stop : stops) {
        if (on) ride += net.car_time(prev, stop);
        if (stop == r->origin) on = true;
        prev = stop;
      }
      ride += net.car_time(prev, sloc);
      const Seconds onward = net.best_transit_route_time(sloc, r->destination);
      const Seconds total = ride + onward;
      if (clock + onward > r->latest_arrival || total > r->max_trip_time || total > threshold(*r)) return false;
    }
    return true;
  }

  const Seconds to = net.car_time(d.origin, sloc);
  Seconds pick = d.earliest_departure + to;
  for (const auto* r : rs) pick = std::max(pick, r->earliest_departure + net.best_transit_route_time(r->origin, sloc));
  Seconds clock = pick;
  LocationId at = sloc;
  Seconds drive = to;
  for (auto stop : stops) {
    clock += net.car_time(at, stop);
    drive += net.car_time(at, stop);
    at = stop;
    for (const auto* r : rs) {
      if (r->destination != stop) continue;
      const Seconds total = net.best_transit_route_time(r->origin, sloc) + (clock - pick);
      if (clock > r->latest_arrival || total > r->max_trip_time || total > threshold(*r)) return false;
    }
  }
  drive += net.car_time(at, d.destination);
  clock += net.car_time(at, d.destination);
  return clock <= d.latest_arrival && drive <= d.max_trip_time;
}

struct RiderSet {
  MatchType type;
  std::vector<TripId> riders;
  friend auto operator<=>(const RiderSet&, const RiderSet&) = default;
};

// Every (type, rider set) of one driver with some station and stop order
// that passes route_feasible.
inline std::set<RiderSet> feasible_family(const TransitNetwork& net, const DriverTrip& d,
                                          const std::vector<RiderTrip>& riders) {
  std::set<RiderSet> out;
  const std::size_t n = riders.size();
  for (auto type : {MatchType::kType1, MatchType::kType2}) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<const RiderTrip*> rs;
      std::vector<TripId> ids;
      std::set<LocationId> stopset;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask >> k & 1) {
          rs.push_back(&riders[k]);
          ids.push_back(riders[k].id);
          stopset.insert(type == MatchType::kType1 ? riders[k].origin : riders[k].destination);
        }
      }
      if (static_cast<int>(rs.size()) > d.capacity) continue;
      std::sort(ids.begin(), ids.end());
      bool found = false;
      for (const auto& st : net.spec().stations) {
        std::vector<LocationId> order(stopset.begin(), stopset.end());
        do {
          found = route_feasible(net, d, rs, type, st.id, order);
        } while (!found && std::next_permutation(order.begin(), order.end()));
        if (found) break;
      }
      if (found) out.insert({type, ids});
    }
  }
  return out;
}

// Smallest departure in [alpha_i, last pickup alpha] minimising the elapsed
// time of a drive that waits at each pickup until its alpha.
inline Seconds sweep_departure(const TransitNetwork& net, const DriverTrip& d, const std::vector<LocationId>& stops,
                               const std::vector<Seconds>& alphas) {
  Seconds hi = d.earliest_departure;
  for (auto a : alphas) hi = std::max(hi, a);
  Seconds best_tau = d.earliest_departure, best_cost = kUnreachable;
  for (Seconds tau = d.earliest_departure; tau <= hi; ++tau) {
    Seconds clock = tau;
    LocationId at = d.origin;
    for (std::size_t k = 0; k < stops.size(); ++k) {
      clock = std::max(clock + net.car_time(at, stops[k]), alphas[k]);
      at = stops[k];
    }
    if (clock - tau < best_cost) {
      best_cost = clock - tau;
      best_tau = tau;
    }
  }
  return best_tau;
}

}  // namespace mtr::test
