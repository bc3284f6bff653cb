#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtr/trip.hpp"

namespace mtr {

// A feasible match: one driver, a nonempty rider set, and one witnessing
// route. `route` lists every location the driver visits in order:
//   type1: o_i, pickups..., station, d_i
//   type2: o_i, station, drop-offs..., d_i
struct Match {
  TripId driver;
  std::vector<TripId> riders;  // ascending
  MatchType type = MatchType::kType1;
  StationId station;
  std::vector<LocationId> route;
  Seconds departure = 0;             // driver leaves o_i
  Seconds driver_time = 0;           // o_i to d_i
  std::vector<Seconds> rider_times;  // t(pi_j), aligned with riders
  Seconds time_saved = 0;            // sum of baseline - t(pi_j)

  int size() const { return static_cast<int>(riders.size()); }
};

// Deterministic edge order: driver id, rider set lexicographic, type.
bool match_order(const Match& a, const Match& b);

// Bipartite hypergraph of feasible matches. Only trips incident to at least
// one edge appear as vertices.
class MatchHypergraph {
 public:
  MatchHypergraph() = default;
  explicit MatchHypergraph(std::vector<Match> edges);

  std::span<const Match> edges() const { return edges_; }
  const Match& edge(std::size_t e) const { return edges_[e]; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const TripId> drivers() const { return drivers_; }
  std::span<const TripId> riders() const { return riders_; }

  // E_j: indices of edges containing trip j (driver or rider).
  std::span<const std::size_t> incident(TripId trip) const;
  // Largest rider count over all edges (0 when empty).
  int max_edge_size() const { return max_size_; }

 private:
  std::vector<Match> edges_;
  std::vector<TripId> drivers_;
  std::vector<TripId> riders_;
  std::unordered_map<TripId, std::vector<std::size_t>> incidence_;
  int max_size_ = 0;
};

std::string match_to_json_line(const Match& m);
void write_hypergraph(std::ostream& out, const MatchHypergraph& h);

}  // namespace mtr
