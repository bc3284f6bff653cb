#include "mtr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mtr/trip_io.hpp"

namespace mtr {

namespace {

constexpr std::uint64_t kRiderSalt = 0x52;
constexpr std::uint64_t kDriverSalt = 0x44;
constexpr std::uint64_t kHeatSalt = 0x48;

std::mt19937_64 sub_engine(std::uint64_t seed, std::uint64_t t, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

enum class AreaClass { kCommunity, kDowntown, kAirport, kAny, kDowntownOrAirport };

struct Classes {
  std::vector<int> community, downtown, airport, any, downtown_or_airport;

  explicit Classes(const TransitNetwork& net) {
    for (std::size_t a = 0; a < net.area_count(); ++a) {
      const int id = static_cast<int>(a);
      any.push_back(id);
      switch (net.area(id).kind) {
        case AreaKind::kCommunity:
          community.push_back(id);
          break;
        case AreaKind::kDowntown:
          downtown.push_back(id);
          downtown_or_airport.push_back(id);
          break;
        case AreaKind::kAirport:
          airport.push_back(id);
          downtown_or_airport.push_back(id);
          break;
      }
    }
  }

  const std::vector<int>& of(AreaClass c) const {
    switch (c) {
      case AreaClass::kCommunity:
        return community;
      case AreaClass::kDowntown:
        return downtown;
      case AreaClass::kAirport:
        return airport;
      case AreaClass::kAny:
        return any;
      case AreaClass::kDowntownOrAirport:
        return downtown_or_airport;
    }
    return any;
  }
};

// Area classes for |Z| in [0,2], (2,3] and beyond 3. A rule with every
// band equal to kAny is a uniform draw.
struct BandRule {
  AreaClass within2, within3, beyond3;
};

BandRule pickup_rule(TimePeriod p) {
  using C = AreaClass;
  switch (p) {
    case TimePeriod::kMorningRush:
      return {C::kCommunity, C::kCommunity, C::kCommunity};
    case TimePeriod::kMorningNormal:
      return {C::kCommunity, C::kDowntown, C::kAirport};
    case TimePeriod::kNoon:
      return {C::kAny, C::kAny, C::kAny};
    case TimePeriod::kAfternoonNormal:
      return {C::kDowntownOrAirport, C::kCommunity, C::kCommunity};
    case TimePeriod::kAfternoonRush:
      return {C::kDowntown, C::kAirport, C::kCommunity};
    case TimePeriod::kEvening:
      return {C::kCommunity, C::kDowntown, C::kAirport};
  }
  return {C::kAny, C::kAny, C::kAny};
}

BandRule dropoff_rule(TimePeriod p) {
  using C = AreaClass;
  switch (p) {
    case TimePeriod::kMorningRush:
      return {C::kDowntown, C::kAirport, C::kCommunity};
    case TimePeriod::kMorningNormal:
    case TimePeriod::kNoon:
      return {C::kAny, C::kAny, C::kAny};
    case TimePeriod::kAfternoonNormal:
      return {C::kCommunity, C::kDowntownOrAirport, C::kDowntownOrAirport};
    case TimePeriod::kAfternoonRush:
      return {C::kCommunity, C::kAirport, C::kDowntown};
    case TimePeriod::kEvening:
      return {C::kCommunity, C::kDowntown, C::kAirport};
  }
  return {C::kAny, C::kAny, C::kAny};
}

template <typename Rng>
int draw_area(const BandRule& rule, const Classes& classes, Rng& rng) {
  AreaClass c = rule.within2;
  if (!(rule.within2 == rule.within3 && rule.within3 == rule.beyond3)) {
    const double z = std::fabs(std::normal_distribution<double>(0.0, 1.0)(rng));
    c = z <= 2.0 ? rule.within2 : (z <= 3.0 ? rule.within3 : rule.beyond3);
  }
  const auto& pool = classes.of(c);
  if (pool.empty()) throw std::runtime_error("network has no area of a required class");
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

template <typename Rng>
LocationId draw_location(const TransitNetwork& net, int area, Rng& rng) {
  auto locs = net.area_locations(area);
  if (locs.empty()) throw std::runtime_error("area without locations");
  return locs[std::uniform_int_distribution<std::size_t>(0, locs.size() - 1)(rng)];
}

template <typename Rng>
MatchType draw_type(TimePeriod p, const GeneratorConfig& cfg, Rng& rng) {
  if (!is_peak(p)) return MatchType::kEither;
  return std::bernoulli_distribution(cfg.peak_type1_fraction)(rng) ? MatchType::kType1 : MatchType::kType2;
}

double interpolate(const std::vector<std::pair<double, double>>& curve, double hour) {
  if (curve.empty()) return 0.0;
  if (hour <= curve.front().first) return curve.front().second;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (hour <= curve[k].first) {
      const auto [h0, v0] = curve[k - 1];
      const auto [h1, v1] = curve[k];
      return v0 + (v1 - v0) * (hour - h0) / (h1 - h0);
    }
  }
  return curve.back().second;
}

// Relative pull toward downtown (morning) and out of it (afternoon).
double inbound_strength(int hour) {
  static constexpr double kIn[18] = {30, 50, 60, 40, 15, 8, 5, 4, 4, 4, 3, 3, 3, 3, 3, 3, 2, 2};
  return kIn[hour - 6];
}

double outbound_strength(int hour) {
  static constexpr double kOut[18] = {1, 1, 1, 1, 1.5, 2, 2, 2, 3, 4, 8, 10, 10, 8, 5, 4, 3, 3};
  return kOut[hour - 6];
}

}  // namespace

const char* to_string(TimePeriod period) {
  switch (period) {
    case TimePeriod::kMorningRush:
      return "morning-rush";
    case TimePeriod::kMorningNormal:
      return "morning-normal";
    case TimePeriod::kNoon:
      return "noon";
    case TimePeriod::kAfternoonNormal:
      return "afternoon-normal";
    case TimePeriod::kAfternoonRush:
      return "afternoon-rush";
    case TimePeriod::kEvening:
      return "evening";
  }
  return "?";
}

std::pair<int, int> period_range(TimePeriod period) {
  switch (period) {
    case TimePeriod::kMorningRush:
      return {0, 11};
    case TimePeriod::kMorningNormal:
      return {12, 19};
    case TimePeriod::kNoon:
      return {20, 31};
    case TimePeriod::kAfternoonNormal:
      return {32, 39};
    case TimePeriod::kAfternoonRush:
      return {40, 51};
    case TimePeriod::kEvening:
      return {52, 71};
  }
  return {0, -1};
}

TimePeriod period_of(int interval) {
  if (interval < 0 || interval >= kIntervalsPerDay) throw std::out_of_range("interval outside 0..71");
  for (auto p : {TimePeriod::kMorningRush, TimePeriod::kMorningNormal, TimePeriod::kNoon,
                 TimePeriod::kAfternoonNormal, TimePeriod::kAfternoonRush, TimePeriod::kEvening}) {
    auto [lo, hi] = period_range(p);
    if (interval >= lo && interval <= hi) return p;
  }
  throw std::logic_error("period table has a gap");
}

bool is_peak(TimePeriod period) {
  return period == TimePeriod::kMorningRush || period == TimePeriod::kAfternoonRush;
}

double DemandProfile::outflow(int c, int hour) const {
  const auto& row = heat[hour - 6][c];
  return std::accumulate(row.begin(), row.end(), 0.0);
}

std::vector<double> DemandProfile::destination_distribution(int c, int hour) const {
  std::vector<double> p = heat[hour - 6][c];
  const double total = outflow(c, hour);
  for (auto& v : p) v /= total;
  return p;
}

DemandProfile build_demand_profile(const TransitNetwork& net, const GeneratorConfig& cfg) {
  DemandProfile prof;
  for (int t = 0; t < kIntervalsPerDay; ++t) {
    const double hour = 6.0 + (t + 0.5) / 4.0;
    const double total = interpolate(cfg.trip_curve, hour) * cfg.scale;
    prof.riders.push_back(static_cast<int>(std::lround(0.75 * total)));
    prof.total.push_back(prof.riders.back() + static_cast<int>(std::lround(prof.riders.back() / 3.0)));
  }

  const int areas = static_cast<int>(net.area_count());
  prof.adjacent.assign(areas, std::vector<char>(areas, 0));
  for (int a = 0; a < areas; ++a) {
    for (int b = 0; b < areas; ++b) {
      const auto ca = net.area_center(a);
      const auto cb = net.area_center(b);
      const Seconds t = std::max(net.car_time(ca, cb), net.car_time(cb, ca));
      prof.adjacent[a][b] = (a == b || static_cast<double>(t) < cfg.adjacency_threshold) ? 1 : 0;
    }
  }

  auto rng = sub_engine(cfg.seed, 0, kHeatSalt);
  std::uniform_real_distribution<double> noise(1.0 - cfg.heatmap_noise, 1.0 + cfg.heatmap_noise);
  prof.heat.assign(18, std::vector<std::vector<double>>(areas, std::vector<double>(areas, 0.0)));
  for (int h = 6; h < 24; ++h) {
    for (int c = 0; c < areas; ++c) {
      auto& row = prof.heat[h - 6][c];
      const AreaKind from = net.area(c).kind;
      double airport_cells = 0;
      for (int r = 0; r < areas; ++r) {
        if (prof.close(c, r)) continue;
        const AreaKind to = net.area(r).kind;
        if (to == AreaKind::kAirport) {
          ++airport_cells;
          continue;
        }
        double v = 10.0;
        if (to == AreaKind::kDowntown) v *= inbound_strength(h);
        if (from == AreaKind::kDowntown) v *= outbound_strength(h);
        if (from == AreaKind::kAirport && to == AreaKind::kDowntown) v = 30.0;
        row[r] = v * noise(rng);
      }
      // Pull cells toward the row mean, then give airports a fixed share.
      double sum = 0;
      int cells = 0;
      for (int r = 0; r < areas; ++r) {
        if (row[r] > 0) {
          sum += row[r];
          ++cells;
        }
      }
      if (cells > 0) {
        const double mean = sum / cells;
        for (auto& v : row) {
          if (v > 0) v = (1.0 - cfg.heatmap_smoothing) * v + cfg.heatmap_smoothing * mean;
        }
      }
      sum = std::accumulate(row.begin(), row.end(), 0.0);
      if (airport_cells > 0 && sum > 0) {
        const double airport_total = sum * cfg.airport_share / (1.0 - cfg.airport_share);
        for (int r = 0; r < areas; ++r) {
          if (!prof.close(c, r) && net.area(r).kind == AreaKind::kAirport) row[r] = airport_total / airport_cells;
        }
      } else if (airport_cells > 0) {
        for (int r = 0; r < areas; ++r) {
          if (!prof.close(c, r) && net.area(r).kind == AreaKind::kAirport) row[r] = 1.0;
        }
      }
    }
  }
  return prof;
}

std::vector<RiderTrip> generate_riders(int t, const TransitNetwork& net, const DemandProfile& profile,
                                       const GeneratorConfig& cfg, std::vector<int>* area_counts) {
  const TimePeriod period = period_of(t);
  const Classes classes(net);
  const BandRule pick = pickup_rule(period);
  const BandRule drop = dropoff_rule(period);
  auto rng = sub_engine(cfg.seed, static_cast<std::uint64_t>(t), kRiderSalt);
  std::uniform_int_distribution<Seconds> announce(0, kIntervalSeconds - 1);
  std::uniform_int_distribution<Seconds> slack(0, cfg.departure_slack);

  if (area_counts) area_counts->assign(net.area_count(), 0);
  std::vector<RiderTrip> out;
  const int count = profile.riders.at(t);
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    int from = -1;
    int to = -1;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000) throw std::runtime_error("cannot draw a rider trip between distant areas");
      from = draw_area(pick, classes, rng);
      to = draw_area(drop, classes, rng);
      if (!profile.close(from, to)) break;
    }
    RiderTrip r;
    r.id = TripId{static_cast<std::int64_t>(t) * 100000 + k};
    r.origin = draw_location(net, from, rng);
    r.destination = draw_location(net, to, rng);
    r.match_type = draw_type(period, cfg, rng);
    r.earliest_departure = interval_start(t) + announce(rng) + slack(rng);
    r.acceptance_rate = cfg.theta;
    r.baseline_transit_time = net.best_transit_route_time(r.origin, r.destination);
    r.max_trip_time = r.baseline_transit_time;
    r.latest_arrival =
        r.earliest_departure + static_cast<Seconds>(std::ceil(cfg.rider_beta_factor * r.baseline_transit_time));
    out.push_back(r);
    if (area_counts) ++(*area_counts)[from];
  }
  return out;
}

std::vector<int> driver_quota(std::span<const int> area_counts) {
  std::vector<int> quota(area_counts.size());
  std::vector<std::pair<int, int>> remainder;  // (c mod 3, area)
  long total = 0;
  for (std::size_t a = 0; a < area_counts.size(); ++a) {
    quota[a] = area_counts[a] / 3;
    remainder.push_back({area_counts[a] % 3, static_cast<int>(a)});
    total += area_counts[a];
  }
  int assigned = std::accumulate(quota.begin(), quota.end(), 0);
  const int target = static_cast<int>(std::lround(total / 3.0));
  std::stable_sort(remainder.begin(), remainder.end(), [](auto a, auto b) { return a.first > b.first; });
  for (const auto& [rem, area] : remainder) {
    if (assigned >= target || rem == 0) break;
    ++quota[area];
    ++assigned;
  }
  return quota;
}

std::vector<DriverTrip> generate_drivers(int t, const TransitNetwork& net, const DemandProfile& profile,
                                         const GeneratorConfig& cfg, std::span<const int> area_counts) {
  const TimePeriod period = period_of(t);
  const int hour = hour_of(t);
  const CapacityMix& mix = is_peak(period) ? cfg.peak_mix : cfg.offpeak_mix;
  auto rng = sub_engine(cfg.seed, static_cast<std::uint64_t>(t), kDriverSalt);
  std::uniform_int_distribution<Seconds> announce(0, kIntervalSeconds - 1);
  std::uniform_int_distribution<Seconds> slack(0, cfg.departure_slack);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto quota = driver_quota(area_counts);
  std::vector<DriverTrip> out;
  std::int64_t k = 0;
  for (std::size_t c = 0; c < quota.size(); ++c) {
    if (quota[c] == 0) continue;
    const auto& row = profile.heat[hour - 6][c];
    std::discrete_distribution<int> dest(row.begin(), row.end());
    for (int n = 0; n < quota[c]; ++n, ++k) {
      DriverTrip d;
      d.id = TripId{static_cast<std::int64_t>(t) * 100000 + 50000 + k};
      const int to = dest(rng);
      d.origin = draw_location(net, static_cast<int>(c), rng);
      d.destination = draw_location(net, to, rng);
      d.match_type = draw_type(period, cfg, rng);

      const double u = unit(rng);
      int lo = 1, hi = 3;
      if (u >= mix.low + mix.mid) {
        lo = 4;
        hi = 6;
      } else if (u >= mix.low) {
        lo = 3;
        hi = 5;
      }
      d.capacity = std::uniform_int_distribution<int>(lo, hi)(rng);
      d.stop_limit = d.capacity <= 3 ? d.capacity : std::uniform_int_distribution<int>(d.capacity - 2, d.capacity)(rng);

      const Seconds direct = net.car_time(d.origin, d.destination);
      const Seconds upper = std::min(2 * direct, cfg.detour_max);
      d.detour_limit = upper < cfg.detour_min ? upper : std::uniform_int_distribution<Seconds>(cfg.detour_min, upper)(rng);
      d.earliest_departure = interval_start(t) + announce(rng) + slack(rng);
      d.max_trip_time = direct + d.detour_limit;
      d.latest_arrival =
          d.earliest_departure + static_cast<Seconds>(std::floor(cfg.driver_beta_factor * d.max_trip_time));
      out.push_back(std::move(d));
    }
  }
  return out;
}

TripSet generate_interval(int t, const TransitNetwork& net, const DemandProfile& profile, const GeneratorConfig& cfg) {
  TripSet trips;
  std::vector<int> counts;
  trips.riders = generate_riders(t, net, profile, cfg, &counts);
  trips.drivers = generate_drivers(t, net, profile, cfg, counts);
  return trips;
}

std::string config_to_json(const GeneratorConfig& cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["trip_curve"] = cfg.trip_curve;
  j["scale"] = cfg.scale;
  j["adjacency_threshold"] = cfg.adjacency_threshold;
  j["theta"] = cfg.theta;
  j["peak_type1_fraction"] = cfg.peak_type1_fraction;
  j["peak_mix"] = {cfg.peak_mix.low, cfg.peak_mix.mid, cfg.peak_mix.high};
  j["offpeak_mix"] = {cfg.offpeak_mix.low, cfg.offpeak_mix.mid, cfg.offpeak_mix.high};
  j["detour"] = {cfg.detour_min, cfg.detour_max};
  j["departure_slack"] = cfg.departure_slack;
  j["beta_factor"] = {cfg.driver_beta_factor, cfg.rider_beta_factor};
  j["airport_share"] = cfg.airport_share;
  j["heatmap"] = {cfg.heatmap_smoothing, cfg.heatmap_noise};
  return j.dump();
}

std::uint64_t config_hash(const GeneratorConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_to_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string interval_file(int t) {
  std::ostringstream os;
  os << "interval_" << std::setw(2) << std::setfill('0') << t << ".jsonl";
  return os.str();
}

}  // namespace

void write_workload(const std::filesystem::path& dir, const TransitNetwork& net, const GeneratorConfig& cfg) {
  std::filesystem::create_directories(dir);
  const auto profile = build_demand_profile(net, cfg);
  nlohmann::json manifest;
  manifest["version"] = 1;
  manifest["seed"] = cfg.seed;
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << config_hash(cfg);
  manifest["config_hash"] = hash.str();
  manifest["config"] = nlohmann::json::parse(config_to_json(cfg));
  auto files = nlohmann::json::array();
  for (int t = 0; t < kIntervalsPerDay; ++t) {
    save_trips(dir / interval_file(t), generate_interval(t, net, profile, cfg));
    files.push_back(interval_file(t));
  }
  manifest["intervals"] = files;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

std::vector<TripSet> load_workload(const std::filesystem::path& dir, const TransitNetwork& net) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing manifest.json in " + dir.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed manifest: " + std::string(e.what()));
  }
  std::vector<TripSet> out;
  for (const auto& f : manifest.at("intervals")) out.push_back(load_trips(dir / f.get<std::string>(), net));
  return out;
}

}  // namespace mtr
