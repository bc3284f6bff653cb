#include "mtr/trip_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace mtr {

using nlohmann::json;

std::string trip_to_json_line(const DriverTrip& d) {
  json j{{"kind", "driver"},         {"id", d.id.value},         {"type", to_string(d.match_type)},
         {"o", d.origin.value},      {"d", d.destination.value}, {"n", d.capacity},
         {"z", d.detour_limit},      {"delta", d.stop_limit},    {"alpha", d.earliest_departure},
         {"beta", d.latest_arrival}, {"gamma", d.max_trip_time}};
  if (!d.preferred_path.empty()) {
    std::vector<std::int32_t> p;
    for (auto l : d.preferred_path) p.push_back(l.value);
    j["p"] = p;
  }
  return j.dump();
}

std::string trip_to_json_line(const RiderTrip& r) {
  json j{{"kind", "rider"},
         {"id", r.id.value},
         {"type", to_string(r.match_type)},
         {"o", r.origin.value},
         {"d", r.destination.value},
         {"alpha", r.earliest_departure},
         {"beta", r.latest_arrival},
         {"gamma", r.max_trip_time},
         {"theta", r.acceptance_rate},
         {"pi_hat", r.baseline_transit_time}};
  return j.dump();
}

namespace {

template <typename T>
T get(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw TripError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw TripError(std::string("field '") + key + "' has the wrong type");
  }
}

MatchType get_type(const json& j) {
  auto t = parse_match_type(get<std::string>(j, "type"));
  if (!t) throw TripError("type must be type1, type2 or either");
  return *t;
}

}  // namespace

TripSet parse_trips(std::istream& in, const TransitNetwork& net) {
  TripSet trips;
  std::string line;
  int lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line);
      auto kind = get<std::string>(j, "kind");
      if (kind == "driver") {
        DriverTrip d;
        d.id = TripId{get<std::int64_t>(j, "id")};
        d.match_type = get_type(j);
        d.origin = LocationId{get<std::int32_t>(j, "o")};
        d.destination = LocationId{get<std::int32_t>(j, "d")};
        d.capacity = get<int>(j, "n");
        d.detour_limit = get<Seconds>(j, "z");
        d.stop_limit = get<int>(j, "delta");
        d.earliest_departure = get<Seconds>(j, "alpha");
        d.latest_arrival = get<Seconds>(j, "beta");
        if (j.contains("p")) {
          for (auto l : get<std::vector<std::int32_t>>(j, "p")) d.preferred_path.push_back(LocationId{l});
        }
        if (j.contains("gamma")) d.max_trip_time = get<Seconds>(j, "gamma");
        complete_driver(d, net);
        validate_driver(d, net);
        trips.drivers.push_back(std::move(d));
      } else if (kind == "rider") {
        RiderTrip r;
        r.id = TripId{get<std::int64_t>(j, "id")};
        r.match_type = get_type(j);
        r.origin = LocationId{get<std::int32_t>(j, "o")};
        r.destination = LocationId{get<std::int32_t>(j, "d")};
        r.earliest_departure = get<Seconds>(j, "alpha");
        r.latest_arrival = get<Seconds>(j, "beta");
        r.acceptance_rate = j.contains("theta") ? get<double>(j, "theta") : 0.8;
        if (j.contains("pi_hat")) r.baseline_transit_time = get<Seconds>(j, "pi_hat");
        if (j.contains("gamma")) r.max_trip_time = get<Seconds>(j, "gamma");
        complete_rider(r, net);
        validate_rider(r, net);
        trips.riders.push_back(std::move(r));
      } else {
        throw TripError("kind must be driver or rider");
      }
    }
    validate_trip_set(trips, net);
  } catch (const json::exception& e) {
    throw TripError("line " + std::to_string(lineno) + ": malformed JSON: " + e.what());
  } catch (const TripError& e) {
    throw TripError("line " + std::to_string(lineno) + ": " + e.what());
  }
  return trips;
}

TripSet load_trips(const std::filesystem::path& path, const TransitNetwork& net) {
  std::ifstream in(path);
  if (!in) throw TripError("cannot open trip file " + path.string());
  try {
    return parse_trips(in, net);
  } catch (const TripError& e) {
    throw TripError(path.string() + ": " + e.what());
  }
}

void write_trips(std::ostream& out, const TripSet& trips) {
  for (const auto& d : trips.drivers) out << trip_to_json_line(d) << '\n';
  for (const auto& r : trips.riders) out << trip_to_json_line(r) << '\n';
}

void save_trips(const std::filesystem::path& path, const TripSet& trips) {
  std::ofstream out(path);
  if (!out) throw TripError("cannot write trip file " + path.string());
  write_trips(out, trips);
}

}  // namespace mtr
