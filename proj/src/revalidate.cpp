#include "mtr/revalidate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mtr {

Revalidator::Revalidator(const TransitNetwork& net, const TripSet& trips) : net_(net) {
  for (const auto& d : trips.drivers) drivers_[d.id] = &d;
  for (const auto& r : trips.riders) riders_[r.id] = &r;
}

std::vector<std::string> Revalidator::check(const Match& m) const {
  std::vector<std::string> out;
  auto bad = [&](const std::string& what) {
    std::ostringstream os;
    os << "match driver " << m.driver.value << " riders {";
    for (std::size_t k = 0; k < m.riders.size(); ++k) os << (k ? "," : "") << m.riders[k].value;
    os << "}: " << what;
    out.push_back(os.str());
  };

  auto dit = drivers_.find(m.driver);
  if (dit == drivers_.end()) {
    bad("unknown driver");
    return out;
  }
  const DriverTrip& d = *dit->second;
  std::vector<const RiderTrip*> rs;
  for (auto id : m.riders) {
    auto it = riders_.find(id);
    if (it == riders_.end()) {
      bad("unknown rider " + std::to_string(id.value));
      return out;
    }
    rs.push_back(it->second);
  }
  if (rs.empty()) bad("no riders");
  if (std::set<TripId>(m.riders.begin(), m.riders.end()).size() != m.riders.size()) bad("repeated rider");
  if (static_cast<int>(rs.size()) > d.capacity) bad("capacity exceeded");
  if (m.type == MatchType::kEither) bad("match type must be concrete");
  if (d.match_type != MatchType::kEither && d.match_type != m.type) bad("driver does not accept match type");
  for (auto* r : rs) {
    if (r->match_type != MatchType::kEither && r->match_type != m.type) bad("rider does not accept match type");
  }
  if (!net_.contains(m.station)) {
    bad("unknown station");
    return out;
  }
  const LocationId sloc = net_.station(m.station).location;
  if (m.route.size() < 4 || m.route.front() != d.origin || m.route.back() != d.destination) {
    bad("route does not run from driver origin to destination");
    return out;
  }
  if (m.rider_times.size() != rs.size()) {
    bad("rider time count differs from rider count");
    return out;
  }

  const bool type1 = m.type == MatchType::kType1;
  const std::size_t station_pos = type1 ? m.route.size() - 2 : 1;
  if (m.route[station_pos] != sloc) bad("station missing from route");
  std::vector<LocationId> stops;
  if (type1) {
    stops.assign(m.route.begin() + 1, m.route.end() - 2);
  } else {
    stops.assign(m.route.begin() + 2, m.route.end() - 1);
  }
  if (static_cast<int>(std::set<LocationId>(stops.begin(), stops.end()).size()) > d.stop_limit) {
    bad("stop limit exceeded");
  }

  // Clock along the route; the driver leaves at the stored departure and
  // never leaves a stop before the riders boarding there are ready.
  Seconds clock = m.departure;
  if (clock < d.earliest_departure) bad("driver departs before earliest departure");
  std::vector<Seconds> arrive(m.route.size(), 0);
  arrive[0] = clock;
  for (std::size_t k = 1; k < m.route.size(); ++k) {
    clock += net_.car_time(m.route[k - 1], m.route[k]);
    if (type1 && k < station_pos) {
      for (auto* r : rs) {
        if (r->origin == m.route[k]) clock = std::max(clock, r->earliest_departure);
      }
    }
    if (!type1 && k == station_pos) {
      for (auto* r : rs) {
        clock = std::max(clock, r->earliest_departure + net_.best_transit_route_time(r->origin, sloc));
      }
    }
    arrive[k] = clock;
  }
  const Seconds driver_total = arrive.back() - m.departure;
  if (arrive.back() > d.latest_arrival) bad("driver arrives after latest arrival");
  const Seconds gamma_i =
      (d.preferred_path.empty() ? net_.car_time(d.origin, d.destination) : net_.path_car_time(d.preferred_path)) +
      d.detour_limit;
  if (driver_total > gamma_i) bad("driver exceeds maximum trip time");
  if (driver_total != m.driver_time) bad("stored driver time differs from re-simulation");

  Seconds saved = 0;
  for (std::size_t x = 0; x < rs.size(); ++x) {
    const RiderTrip& r = *rs[x];
    const Seconds baseline = net_.best_transit_route_time(r.origin, r.destination);
    Seconds total = 0;
    Seconds arrival = 0;
    if (type1) {
      std::size_t k = 1;
      while (k < station_pos && m.route[k] != r.origin) ++k;
      if (k == station_pos) {
        bad("rider origin not on route");
        continue;
      }
      if (arrive[k] < r.earliest_departure) bad("rider picked up before earliest departure");
      const Seconds onward = net_.best_transit_route_time(sloc, r.destination);
      total = arrive[station_pos] - arrive[k] + onward;
      arrival = arrive[station_pos] + onward;
    } else {
      std::size_t k = station_pos + 1;
      while (k + 1 < m.route.size() && m.route[k] != r.destination) ++k;
      if (k + 1 == m.route.size()) {
        bad("rider destination not on route");
        continue;
      }
      total = net_.best_transit_route_time(r.origin, sloc) + (arrive[k] - arrive[station_pos]);
      arrival = arrive[k];
      if (arrive[station_pos] - net_.best_transit_route_time(r.origin, sloc) < r.earliest_departure) {
        bad("rider leaves before earliest departure");
      }
    }
    if (arrival > r.latest_arrival) bad("rider " + std::to_string(r.id.value) + " arrives late");
    if (total > r.max_trip_time) bad("rider " + std::to_string(r.id.value) + " exceeds maximum trip time");
    const auto limit = static_cast<Seconds>(std::floor(r.acceptance_rate * static_cast<double>(baseline) + 1e-9));
    if (total > limit) bad("rider " + std::to_string(r.id.value) + " route not accepted");
    if (total != m.rider_times[x]) bad("stored rider time differs from re-simulation");
    saved += baseline - total;
  }
  if (saved != m.time_saved) bad("stored time saved differs from re-simulation");
  return out;
}

std::vector<std::string> Revalidator::check_solution(std::span<const Match> chosen) const {
  std::vector<std::string> out;
  std::unordered_set<TripId> used;
  for (const auto& m : chosen) {
    auto v = check(m);
    out.insert(out.end(), v.begin(), v.end());
    if (!used.insert(m.driver).second) out.push_back("driver " + std::to_string(m.driver.value) + " used twice");
    for (auto r : m.riders) {
      if (!used.insert(r).second) out.push_back("rider " + std::to_string(r.value) + " used twice");
    }
  }
  return out;
}

}  // namespace mtr
