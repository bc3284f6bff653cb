#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtr/hypergraph.hpp"
#include "mtr/network.hpp"
#include "mtr/trip.hpp"

namespace mtr {

// A time-feasible station for one trip and one concrete match type.
struct StationTimeTuple {
  StationId station;
  Seconds earliest_arrival = 0;  // alpha(s)
  friend bool operator==(const StationTimeTuple&, const StationTimeTuple&) = default;
};

// Riders, type1: alpha_j(s) = alpha_j + t(o_j, s) and the three tests on
// beta_j, gamma_j and the acceptance threshold using t^(s, d_j).
// Riders, type2: alpha_j(s) = alpha_j + t^(o_j, s); the tests use t(s, d_j).
// Sorted by (earliest_arrival, station id).
std::vector<StationTimeTuple> rider_station_tuples(const RiderTrip& rider, MatchType type,
                                                   const TransitNetwork& net);
// Drivers: alpha_i(s) = alpha_i + t(o_i, s), tested against beta_i and
// gamma_i. Identical for both match types.
std::vector<StationTimeTuple> driver_station_tuples(const DriverTrip& driver, const TransitNetwork& net);

// max{alpha_i, alpha_{l_k} - t(l_0..l_k)} over the pickup stops l_1..l_p;
// stop_alpha[k] is the largest earliest departure among riders at stop k.
Seconds latest_departure(const DriverTrip& driver, std::span<const LocationId> pickups,
                         std::span<const Seconds> stop_alpha, const TransitNetwork& net);

struct ReductionConfig {
  double keep_percent = 100.0;  // x
  int driver_cap = INT_MAX;     // y
  int rider_cap = INT_MAX;      // z

  static ReductionConfig unreduced() { return {}; }
};

// Throws std::invalid_argument on out-of-range values.
void validate_reduction(const ReductionConfig& cfg);

struct EngineOptions {
  ReductionConfig reduction;
  bool best_station = false;  // single-rider matches keep the best station, not the first
  int threads = 1;
  bool audit = false;  // count duplicate candidate rider sets
};

struct EngineStats {
  std::size_t base_before_reduction = 0;
  std::size_t base_after_reduction = 0;
  std::size_t multi_rider_edges = 0;
  std::size_t candidates_tested = 0;
  std::size_t closure_rejections = 0;
  std::size_t duplicate_candidates = 0;  // only counted with audit
  double alg1_ms = 0.0;
  double alg2_ms = 0.0;
};

// Computes station tuples, single-rider matches, the reduction and the
// multi-rider matches for one announcement batch.
class FeasibilityEngine {
 public:
  FeasibilityEngine(const TransitNetwork& net, const TripSet& trips, EngineOptions options = {});
  ~FeasibilityEngine();
  FeasibilityEngine(const FeasibilityEngine&) = delete;
  FeasibilityEngine& operator=(const FeasibilityEngine&) = delete;

  // Single-rider matches after the reduction, in edge order.
  std::vector<Match> single_passenger_matches();
  // Extends base matches with larger rider sets; returns all edges.
  MatchHypergraph enumerate_matches(std::vector<Match> base);
  // Both stages.
  MatchHypergraph build();

  // Tries to add rider j to a feasible match; first feasible station and
  // stop order wins.
  std::optional<Match> feasible_insert(const Match& m, const RiderTrip& j) const;

  const EngineStats& stats() const { return stats_; }
  const TransitNetwork& network() const { return net_; }

  const DriverTrip& driver(TripId id) const;
  const RiderTrip& rider(TripId id) const;

 private:
  struct RiderInfo;
  struct DriverInfo;

  // Times a concrete route; `stops` are pickup (type1) or drop-off (type2)
  // locations in visiting order.
  std::optional<Match> evaluate(int driver, std::span<const int> riders, MatchType type, int station,
                                std::span<const LocationId> stops) const;
  std::optional<Match> best_single(int driver, int rider, MatchType type) const;
  std::optional<Match> insert_local(const Match& m, std::span<const int> riders, int j) const;
  std::vector<Match> extend_driver(int driver, std::vector<Match> base, std::size_t& tested,
                                   std::size_t& closure, std::size_t& dups) const;
  void reduce(std::vector<std::vector<Match>>& per_driver) const;
  int rider_index(TripId id) const;
  int driver_index(TripId id) const;

  const TransitNetwork& net_;
  EngineOptions options_;
  std::vector<DriverTrip> drivers_;  // ascending id
  std::vector<RiderTrip> riders_;    // ascending id
  std::vector<DriverInfo> dinfo_;
  std::vector<RiderInfo> rinfo_;
  EngineStats stats_;
};

}  // namespace mtr
