#include "mtr/feasibility.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "parallel.hpp"

namespace mtr {

namespace {

constexpr MatchType kConcreteTypes[] = {MatchType::kType1, MatchType::kType2};

int type_slot(MatchType type) { return type == MatchType::kType1 ? 0 : 1; }

bool tuple_order(const StationTimeTuple& a, const StationTimeTuple& b) {
  if (a.earliest_arrival != b.earliest_arrival) return a.earliest_arrival < b.earliest_arrival;
  return a.station < b.station;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

using detail::parallel_for;

}  // namespace

std::vector<StationTimeTuple> rider_station_tuples(const RiderTrip& rider, MatchType type,
                                                   const TransitNetwork& net) {
  std::vector<StationTimeTuple> out;
  const Seconds threshold = acceptance_threshold(rider);
  for (const auto& st : net.spec().stations) {
    Seconds access = 0;
    Seconds onward = 0;
    if (type == MatchType::kType1) {
      access = net.car_time(rider.origin, st.location);
      onward = net.best_transit_route_time(st.location, rider.destination);
    } else {
      access = net.best_transit_route_time(rider.origin, st.location);
      onward = net.car_time(st.location, rider.destination);
    }
    const Seconds arrival = rider.earliest_departure + access;
    if (arrival + onward > rider.latest_arrival) continue;
    if (access + onward > rider.max_trip_time) continue;
    if (access + onward > threshold) continue;
    out.push_back({st.id, arrival});
  }
  std::sort(out.begin(), out.end(), tuple_order);
  return out;
}

std::vector<StationTimeTuple> driver_station_tuples(const DriverTrip& driver, const TransitNetwork& net) {
  std::vector<StationTimeTuple> out;
  for (const auto& st : net.spec().stations) {
    const Seconds to = net.car_time(driver.origin, st.location);
    const Seconds from = net.car_time(st.location, driver.destination);
    const Seconds arrival = driver.earliest_departure + to;
    if (arrival + from > driver.latest_arrival) continue;
    if (to + from > driver.max_trip_time) continue;
    out.push_back({st.id, arrival});
  }
  std::sort(out.begin(), out.end(), tuple_order);
  return out;
}

Seconds latest_departure(const DriverTrip& driver, std::span<const LocationId> pickups,
                         std::span<const Seconds> stop_alpha, const TransitNetwork& net) {
  if (pickups.size() != stop_alpha.size()) throw std::invalid_argument("pickups and alphas differ in length");
  Seconds dep = driver.earliest_departure;
  Seconds prefix = 0;
  LocationId cur = driver.origin;
  for (std::size_t k = 0; k < pickups.size(); ++k) {
    prefix += net.car_time(cur, pickups[k]);
    cur = pickups[k];
    dep = std::max(dep, stop_alpha[k] - prefix);
  }
  return dep;
}

void validate_reduction(const ReductionConfig& cfg) {
  if (!(cfg.keep_percent > 0.0 && cfg.keep_percent <= 100.0)) {
    throw std::invalid_argument("reduction x must lie in (0, 100]");
  }
  if (cfg.driver_cap < 1) throw std::invalid_argument("reduction y must be at least 1");
  if (cfg.rider_cap < 1) throw std::invalid_argument("reduction z must be at least 1");
}

struct FeasibilityEngine::RiderInfo {
  Seconds threshold = 0;
  // Per concrete type: membership of each station in the tuple set.
  std::vector<char> has_station[2];
  // type1: t(o_j, s) and t^(s, d_j); type2: t^(o_j, s) and t(s, d_j).
  std::vector<Seconds> access[2];
  std::vector<Seconds> onward[2];
};

struct FeasibilityEngine::DriverInfo {
  std::vector<int> scan;  // station indices in (alpha_i(s), id) order
  std::vector<char> has_station;
  std::vector<Seconds> to_station;
  std::vector<Seconds> from_station;
};

FeasibilityEngine::FeasibilityEngine(const TransitNetwork& net, const TripSet& trips, EngineOptions options)
    : net_(net), options_(options), drivers_(trips.drivers), riders_(trips.riders) {
  validate_reduction(options_.reduction);
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(drivers_.begin(), drivers_.end(), by_id);
  std::sort(riders_.begin(), riders_.end(), by_id);
  const std::size_t ns = net.station_count();

  dinfo_.resize(drivers_.size());
  rinfo_.resize(riders_.size());
  parallel_for(drivers_.size(), options_.threads, [&](std::size_t k) {
    const auto& d = drivers_[k];
    auto& info = dinfo_[k];
    info.has_station.assign(ns, 0);
    info.to_station.resize(ns);
    info.from_station.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const auto loc = net.spec().stations[s].location;
      info.to_station[s] = net.car_time(d.origin, loc);
      info.from_station[s] = net.car_time(loc, d.destination);
    }
    for (const auto& t : driver_station_tuples(d, net)) {
      info.scan.push_back(t.station.value);
      info.has_station[t.station.value] = 1;
    }
  });
  parallel_for(riders_.size(), options_.threads, [&](std::size_t k) {
    const auto& r = riders_[k];
    auto& info = rinfo_[k];
    info.threshold = acceptance_threshold(r);
    for (auto type : kConcreteTypes) {
      const int slot = type_slot(type);
      info.has_station[slot].assign(ns, 0);
      info.access[slot].resize(ns);
      info.onward[slot].resize(ns);
      for (std::size_t s = 0; s < ns; ++s) {
        const auto loc = net.spec().stations[s].location;
        if (type == MatchType::kType1) {
          info.access[slot][s] = net.car_time(r.origin, loc);
          info.onward[slot][s] = net.best_transit_route_time(loc, r.destination);
        } else {
          info.access[slot][s] = net.best_transit_route_time(r.origin, loc);
          info.onward[slot][s] = net.car_time(loc, r.destination);
        }
      }
      if (!accepts(r.match_type, type)) continue;
      for (const auto& t : rider_station_tuples(r, type, net)) info.has_station[slot][t.station.value] = 1;
    }
  });
}

FeasibilityEngine::~FeasibilityEngine() = default;

int FeasibilityEngine::rider_index(TripId id) const {
  auto it = std::lower_bound(riders_.begin(), riders_.end(), id, [](const RiderTrip& r, TripId v) { return r.id < v; });
  if (it == riders_.end() || it->id != id) return -1;
  return static_cast<int>(it - riders_.begin());
}

int FeasibilityEngine::driver_index(TripId id) const {
  auto it =
      std::lower_bound(drivers_.begin(), drivers_.end(), id, [](const DriverTrip& d, TripId v) { return d.id < v; });
  if (it == drivers_.end() || it->id != id) return -1;
  return static_cast<int>(it - drivers_.begin());
}

const DriverTrip& FeasibilityEngine::driver(TripId id) const {
  int k = driver_index(id);
  if (k < 0) throw std::out_of_range("unknown driver");
  return drivers_[k];
}

const RiderTrip& FeasibilityEngine::rider(TripId id) const {
  int k = rider_index(id);
  if (k < 0) throw std::out_of_range("unknown rider");
  return riders_[k];
}

std::optional<Match> FeasibilityEngine::evaluate(int di, std::span<const int> rs, MatchType type, int s,
                                                 std::span<const LocationId> stops) const {
  const auto& d = drivers_[di];
  const auto& dinf = dinfo_[di];
  const int slot = type_slot(type);
  const auto sloc = net_.spec().stations[s].location;
  const std::size_t q = stops.size();
  if (q == 0 || static_cast<int>(rs.size()) > d.capacity || static_cast<int>(q) > d.stop_limit) return std::nullopt;

  // Cumulative drive time to each stop, from o_i (type1) or the station (type2).
  Seconds prefix[16];
  if (q > 16 || rs.size() > 16) return std::nullopt;
  LocationId cur = type == MatchType::kType1 ? d.origin : sloc;
  Seconds acc = 0;
  for (std::size_t k = 0; k < q; ++k) {
    acc += net_.car_time(cur, stops[k]);
    prefix[k] = acc;
    cur = stops[k];
  }
  auto stop_of = [&](const RiderTrip& r) -> int {
    const LocationId loc = type == MatchType::kType1 ? r.origin : r.destination;
    for (std::size_t k = 0; k < q; ++k) {
      if (stops[k] == loc) return static_cast<int>(k);
    }
    return -1;
  };

  Match m;
  m.driver = d.id;
  m.type = type;
  m.station = StationId{s};
  m.rider_times.reserve(rs.size());
  int stop_index[16];
  for (std::size_t x = 0; x < rs.size(); ++x) {
    stop_index[x] = stop_of(riders_[rs[x]]);
    if (stop_index[x] < 0) return std::nullopt;
  }

  if (type == MatchType::kType1) {
    const Seconds t_i = prefix[q - 1] + net_.car_time(stops[q - 1], sloc);
    Seconds dep = d.earliest_departure;
    for (std::size_t x = 0; x < rs.size(); ++x) {
      dep = std::max(dep, riders_[rs[x]].earliest_departure - prefix[stop_index[x]]);
    }
    const Seconds t = dep + t_i;
    const Seconds after = dinf.from_station[s];
    if (t + after > d.latest_arrival || t_i + after > d.max_trip_time) return std::nullopt;
    for (std::size_t x = 0; x < rs.size(); ++x) {
      const auto& r = riders_[rs[x]];
      const auto& ri = rinfo_[rs[x]];
      const Seconds onward = ri.onward[slot][s];
      const Seconds total = t_i - prefix[stop_index[x]] + onward;
      if (t + onward > r.latest_arrival || total > r.max_trip_time || total > ri.threshold) return std::nullopt;
      m.rider_times.push_back(total);
      m.time_saved += r.baseline_transit_time - total;
    }
    m.departure = dep;
    m.driver_time = t_i + after;
    m.route.reserve(q + 3);
    m.route.push_back(d.origin);
    m.route.insert(m.route.end(), stops.begin(), stops.end());
    m.route.push_back(sloc);
    m.route.push_back(d.destination);
  } else {
    const Seconds to = dinf.to_station[s];
    Seconds pick = d.earliest_departure + to;
    for (int r : rs) pick = std::max(pick, riders_[r].earliest_departure + rinfo_[r].access[slot][s]);
    const Seconds tail = prefix[q - 1] + net_.car_time(stops[q - 1], d.destination);
    if (pick + tail > d.latest_arrival || to + tail > d.max_trip_time) return std::nullopt;
    for (std::size_t x = 0; x < rs.size(); ++x) {
      const auto& r = riders_[rs[x]];
      const auto& ri = rinfo_[rs[x]];
      const Seconds ride = prefix[stop_index[x]];
      const Seconds total = ri.access[slot][s] + ride;
      if (pick + ride > r.latest_arrival || total > r.max_trip_time || total > ri.threshold) return std::nullopt;
      m.rider_times.push_back(total);
      m.time_saved += r.baseline_transit_time - total;
    }
    m.departure = pick - to;
    m.driver_time = to + tail;
    m.route.reserve(q + 3);
    m.route.push_back(d.origin);
    m.route.push_back(sloc);
    m.route.insert(m.route.end(), stops.begin(), stops.end());
    m.route.push_back(d.destination);
  }
  m.riders.reserve(rs.size());
  for (int r : rs) m.riders.push_back(riders_[r].id);
  return m;
}

std::optional<Match> FeasibilityEngine::best_single(int di, int ri, MatchType type) const {
  const auto& r = riders_[ri];
  const int slot = type_slot(type);
  const LocationId stop = type == MatchType::kType1 ? r.origin : r.destination;
  const int rs[1] = {ri};
  std::optional<Match> best;
  for (int s : dinfo_[di].scan) {
    if (!rinfo_[ri].has_station[slot][s]) continue;
    auto m = evaluate(di, rs, type, s, std::span<const LocationId>(&stop, 1));
    if (!m) continue;
    if (!options_.best_station) return m;
    if (!best || m->time_saved > best->time_saved) best = std::move(m);
  }
  return best;
}

void FeasibilityEngine::reduce(std::vector<std::vector<Match>>& per_driver) const {
  const auto& cfg = options_.reduction;
  auto rank = [](const Match& a, const Match& b) {
    if (a.time_saved != b.time_saved) return a.time_saved > b.time_saved;
    if (a.riders[0] != b.riders[0]) return a.riders[0] < b.riders[0];
    return a.type < b.type;
  };
  for (auto& list : per_driver) {
    std::stable_sort(list.begin(), list.end(), rank);
    if (cfg.keep_percent < 100.0) {
      auto keep = static_cast<std::size_t>(std::ceil(cfg.keep_percent * list.size() / 100.0 - 1e-9));
      list.resize(std::min(keep, list.size()));
    }
  }

  if (cfg.rider_cap != INT_MAX) {
    struct Ref {
      std::size_t driver;
      std::size_t pos;
    };
    std::vector<std::vector<Ref>> by_rider(riders_.size());
    for (std::size_t k = 0; k < per_driver.size(); ++k) {
      for (std::size_t p = 0; p < per_driver[k].size(); ++p) {
        by_rider[rider_index(per_driver[k][p].riders[0])].push_back({k, p});
      }
    }
    std::vector<std::vector<char>> drop(per_driver.size());
    for (std::size_t k = 0; k < per_driver.size(); ++k) drop[k].assign(per_driver[k].size(), 0);
    for (auto& refs : by_rider) {
      if (refs.size() <= static_cast<std::size_t>(cfg.rider_cap)) continue;
      std::stable_sort(refs.begin(), refs.end(), [&](const Ref& a, const Ref& b) {
        const auto& ma = per_driver[a.driver][a.pos];
        const auto& mb = per_driver[b.driver][b.pos];
        if (ma.time_saved != mb.time_saved) return ma.time_saved > mb.time_saved;
        if (ma.driver != mb.driver) return ma.driver < mb.driver;
        return ma.type < mb.type;
      });
      for (std::size_t x = cfg.rider_cap; x < refs.size(); ++x) drop[refs[x].driver][refs[x].pos] = 1;
    }
    for (std::size_t k = 0; k < per_driver.size(); ++k) {
      std::vector<Match> kept;
      for (std::size_t p = 0; p < per_driver[k].size(); ++p) {
        if (!drop[k][p]) kept.push_back(std::move(per_driver[k][p]));
      }
      per_driver[k] = std::move(kept);
    }
  }

  for (auto& list : per_driver) {
    if (list.size() > static_cast<std::size_t>(cfg.driver_cap)) list.resize(cfg.driver_cap);
    std::sort(list.begin(), list.end(), match_order);
  }
}

std::vector<Match> FeasibilityEngine::single_passenger_matches() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<Match>> per_driver(drivers_.size());
  parallel_for(drivers_.size(), options_.threads, [&](std::size_t di) {
    const auto& d = drivers_[di];
    for (std::size_t ri = 0; ri < riders_.size(); ++ri) {
      for (auto type : kConcreteTypes) {
        if (!accepts(d.match_type, type) || !accepts(riders_[ri].match_type, type)) continue;
        if (auto m = best_single(static_cast<int>(di), static_cast<int>(ri), type)) {
          per_driver[di].push_back(std::move(*m));
        }
      }
    }
  });
  stats_.base_before_reduction = 0;
  for (const auto& l : per_driver) stats_.base_before_reduction += l.size();
  reduce(per_driver);
  std::vector<Match> out;
  for (auto& l : per_driver) {
    for (auto& m : l) out.push_back(std::move(m));
  }
  stats_.base_after_reduction = out.size();
  stats_.alg1_ms = elapsed_ms(start);
  return out;
}

std::optional<Match> FeasibilityEngine::insert_local(const Match& m, std::span<const int> rs, int j) const {
  const int di = driver_index(m.driver);
  const auto& d = drivers_[di];
  const MatchType type = m.type;
  const int slot = type_slot(type);
  if (static_cast<int>(rs.size()) + 1 > d.capacity) return std::nullopt;

  std::vector<int> cand(rs.begin(), rs.end());
  cand.insert(std::upper_bound(cand.begin(), cand.end(), j), j);
  auto stop_loc = [&](int r) { return type == MatchType::kType1 ? riders_[r].origin : riders_[r].destination; };

  // Stored witness order of stops.
  std::vector<LocationId> witness;
  if (type == MatchType::kType1) {
    witness.assign(m.route.begin() + 1, m.route.end() - 2);
  } else {
    witness.assign(m.route.begin() + 2, m.route.end() - 1);
  }
  const LocationId jloc = stop_loc(j);
  const bool shared = std::find(witness.begin(), witness.end(), jloc) != witness.end();
  if (!shared && static_cast<int>(witness.size()) + 1 > d.stop_limit) return std::nullopt;

  std::vector<int> stations;
  for (int s : dinfo_[di].scan) {
    bool ok = true;
    for (int r : cand) {
      if (!rinfo_[r].has_station[slot][s]) {
        ok = false;
        break;
      }
    }
    if (ok) stations.push_back(s);
  }
  if (stations.empty()) return std::nullopt;

  // Extend the stored order first: j joins an existing stop or is inserted
  // at each position.
  for (int s : stations) {
    if (shared) {
      if (auto r = evaluate(di, cand, type, s, witness)) return r;
      continue;
    }
    std::vector<LocationId> order(witness);
    order.insert(order.begin(), jloc);
    for (std::size_t pos = 0;; ++pos) {
      if (auto r = evaluate(di, cand, type, s, order)) return r;
      if (pos + 1 >= order.size()) break;
      std::swap(order[pos], order[pos + 1]);
    }
  }

  // Fall back to every stop order so no feasible extension is missed.
  std::vector<LocationId> stops(witness);
  if (!shared) stops.push_back(jloc);
  std::sort(stops.begin(), stops.end());
  if (stops.size() < 2) return std::nullopt;
  for (int s : stations) {
    std::vector<LocationId> order(stops);
    do {
      if (auto r = evaluate(di, cand, type, s, order)) return r;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

std::optional<Match> FeasibilityEngine::feasible_insert(const Match& m, const RiderTrip& j) const {
  const int jx = rider_index(j.id);
  if (jx < 0 || driver_index(m.driver) < 0) return std::nullopt;
  if (std::find(m.riders.begin(), m.riders.end(), j.id) != m.riders.end()) return std::nullopt;
  if (!accepts(j.match_type, m.type)) return std::nullopt;
  std::vector<int> rs;
  for (auto id : m.riders) {
    int x = rider_index(id);
    if (x < 0) return std::nullopt;
    rs.push_back(x);
  }
  return insert_local(m, rs, jx);
}

std::vector<Match> FeasibilityEngine::extend_driver(int di, std::vector<Match> base, std::size_t& tested,
                                                    std::size_t& closure, std::size_t& dups) const {
  const auto& d = drivers_[di];
  const std::size_t cap = static_cast<std::size_t>(options_.reduction.driver_cap);
  struct Entry {
    std::vector<int> riders;
    Match match;
  };
  std::vector<Entry> level[2];
  std::vector<int> base_riders[2];
  for (const auto& m : base) {
    const int slot = type_slot(m.type);
    const int r = rider_index(m.riders[0]);
    level[slot].push_back({{r}, m});
    base_riders[slot].push_back(r);
  }
  for (auto& b : base_riders) std::sort(b.begin(), b.end());
  for (auto& l : level) {
    std::sort(l.begin(), l.end(), [](const Entry& a, const Entry& b) { return a.riders < b.riders; });
  }

  std::vector<Match> out(std::move(base));
  std::set<std::vector<int>> seen[2];
  for (int p = 2; p <= d.capacity && out.size() < cap; ++p) {
    bool grew = false;
    for (auto type : kConcreteTypes) {
      const int slot = type_slot(type);
      std::vector<Entry> next;
      const auto& prev = level[slot];
      for (const auto& e : prev) {
        if (out.size() >= cap) break;
        for (int j : base_riders[slot]) {
          if (j <= e.riders.back()) continue;
          if (out.size() >= cap) break;
          std::vector<int> cand(e.riders);
          cand.push_back(j);
          // Every subset of size p-1 must already be a feasible match.
          bool closed = true;
          std::vector<int> sub(p - 1);
          for (int drop = 0; drop + 1 < p && closed; ++drop) {
            sub.clear();
            for (int x = 0; x < p; ++x) {
              if (x != drop) sub.push_back(cand[x]);
            }
            closed = std::binary_search(prev.begin(), prev.end(), Entry{sub, {}},
                                        [](const Entry& a, const Entry& b) { return a.riders < b.riders; });
          }
          if (!closed) {
            ++closure;
            continue;
          }
          ++tested;
          if (options_.audit && !seen[slot].insert(cand).second) ++dups;
          if (auto m = insert_local(e.match, e.riders, j)) {
            out.push_back(*m);
            next.push_back({std::move(cand), std::move(*m)});
          }
        }
      }
      level[slot] = std::move(next);
      grew = grew || !level[slot].empty();
    }
    if (!grew) break;
  }
  return out;
}

MatchHypergraph FeasibilityEngine::enumerate_matches(std::vector<Match> base) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<Match>> per_driver(drivers_.size());
  for (auto& m : base) {
    const int di = driver_index(m.driver);
    if (di < 0) throw std::invalid_argument("base match for unknown driver");
    per_driver[di].push_back(std::move(m));
  }
  std::vector<std::size_t> tested(drivers_.size()), closure(drivers_.size()), dups(drivers_.size());
  parallel_for(drivers_.size(), options_.threads, [&](std::size_t di) {
    if (per_driver[di].empty()) return;
    per_driver[di] = extend_driver(static_cast<int>(di), std::move(per_driver[di]), tested[di], closure[di], dups[di]);
  });
  std::vector<Match> all;
  std::size_t multi = 0;
  for (std::size_t di = 0; di < drivers_.size(); ++di) {
    stats_.candidates_tested += tested[di];
    stats_.closure_rejections += closure[di];
    stats_.duplicate_candidates += dups[di];
    for (auto& m : per_driver[di]) {
      if (m.size() > 1) ++multi;
      all.push_back(std::move(m));
    }
  }
  stats_.multi_rider_edges = multi;
  MatchHypergraph h(std::move(all));
  stats_.alg2_ms = elapsed_ms(start);
  return h;
}

MatchHypergraph FeasibilityEngine::build() { return enumerate_matches(single_passenger_matches()); }

}  // namespace mtr
