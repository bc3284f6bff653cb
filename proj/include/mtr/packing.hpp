#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtr/hypergraph.hpp"

namespace mtr {

// A set of pairwise trip-disjoint matches.
struct Solution {
  std::string solver;
  std::vector<Match> chosen;        // edge order
  std::vector<std::size_t> edges;   // indices into the hypergraph
  std::vector<TripId> covered;      // ascending rider ids
  int objective = 0;                // sum of p(e)
  bool optimal = false;             // certified by the exact solver
  double elapsed_ms = 0.0;
};

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Builds a Solution from edge indices; throws ConsistencyError if two
// chosen edges share a trip.
Solution make_solution(const MatchHypergraph& h, std::vector<std::size_t> edges, std::string solver);

struct ExactOptions {
  std::uint64_t node_budget = 50'000'000;
  std::optional<std::chrono::milliseconds> time_budget;
};

// Branch and bound on the set-packing formulation. Drivers are branched in
// descending order of their largest edge; the bound is the smaller of the
// remaining drivers' largest edges and the riders still uncovered. When a
// budget runs out the incumbent is returned with optimal = false.
Solution exact_solve(const MatchHypergraph& h, const ExactOptions& options = {});

// Repeatedly takes the edge covering the most new riders (ties by edge
// order) and discards every edge sharing a trip with it.
Solution imp_greedy(const MatchHypergraph& h);

class ConflictGraphTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One vertex per hyperedge weighted by its rider count; vertices are
// adjacent when their edges share a driver or rider.
struct ConflictGraph {
  std::vector<int> weight;
  std::vector<std::vector<int>> adjacency;  // sorted
  int k = 0;  // largest trip count of an edge (riders plus driver)

  std::size_t size() const { return weight.size(); }
  bool adjacent(int u, int v) const;
  bool independent(std::span<const int> set) const;
};

inline constexpr std::size_t kDefaultAdjacencyBudget = 50'000'000;

// Throws ConflictGraphTooLarge once the adjacency entries exceed `budget`.
ConflictGraph to_conflict_graph(const MatchHypergraph& h, std::size_t budget = kDefaultAdjacencyBudget);

// Takes the heaviest remaining vertex (ties by index) and removes its
// neighbours until none remain. Result ascending.
std::vector<int> greedy_mis(const ConflictGraph& g);

enum class ImprovementRule { kAnyImp, kBestImp };
enum class ImprovementMetric { kWeight, kWeightSquared };

const char* to_string(ImprovementRule rule);
const char* to_string(ImprovementMetric metric);

struct LocalSearchOptions {
  ImprovementRule rule = ImprovementRule::kAnyImp;
  ImprovementMetric metric = ImprovementMetric::kWeightSquared;
  // Wall-clock limit for finding one improvement; none means unlimited.
  std::optional<std::chrono::milliseconds> round_limit;
};

struct LocalSearchResult {
  std::vector<int> vertices;  // ascending
  int improvements = 0;
  bool timed_out = false;
};

// Claw local search. A claw is a centre vertex with an independent set of at
// most k talons drawn from its neighbours outside I (or the centre alone
// when it is outside I). Applying talons T replaces N(T) ∩ I by T. Throws
// std::invalid_argument if the start set is not independent.
LocalSearchResult local_search(const ConflictGraph& g, std::vector<int> start, const LocalSearchOptions& options);

// Maps independent vertices back to matches.
Solution solution_from_vertices(const ConflictGraph& g, const MatchHypergraph& h, std::span<const int> vertices,
                                std::string solver);

// {"solver","objective","matches":[...]} plus elapsed_ms when asked.
std::string solution_to_json(const Solution& s, bool include_elapsed);

}  // namespace mtr
