#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtr/feasibility.hpp"
#include "mtr/generator.hpp"
#include "mtr/network_gen.hpp"
#include "mtr/packing.hpp"

namespace mtr {

enum class SolverKind { kExact, kImpGreedy, kGreedy, kAnyImp, kBestImp };

const char* to_string(SolverKind solver);
std::optional<SolverKind> parse_solver(std::string_view name);

struct Preset {
  std::string name;
  ReductionConfig reduction;
  std::chrono::seconds time_limit;
};

// Small1..Large4(-10) and Huge1..Huge3. Lookup is case-insensitive; Small4,
// Medium4, Large3 and Large4 also answer to their "-10" names.
std::optional<Preset> find_preset(std::string_view name);
std::vector<Preset> all_presets();
// "x,y,z" as a reduction config.
std::optional<ReductionConfig> parse_reduction(std::string_view text);

struct RunConfig {
  std::optional<std::filesystem::path> network_file;
  NetworkGenConfig network_gen;
  std::optional<std::filesystem::path> workload_dir;
  GeneratorConfig generator;
  SolverKind solver = SolverKind::kImpGreedy;
  std::string config_name = "Medium4";
  ReductionConfig reduction{30.0, 600, 20};
  std::optional<std::chrono::milliseconds> time_limit = std::chrono::seconds(10);
  ImprovementMetric metric = ImprovementMetric::kWeightSquared;
  bool best_station = false;
  std::size_t adjacency_budget = kDefaultAdjacencyBudget;
  ExactOptions exact;
  int first_interval = 0;
  int last_interval = kIntervalsPerDay - 1;
  int engine_threads = 1;
  int interval_threads = 1;
  bool timings_in_solutions = false;
  std::filesystem::path out_dir = "out";
};

struct IntervalReport {
  int interval = 0;
  int riders = 0;
  int drivers = 0;
  std::size_t base_matches = 0;
  std::size_t edges = 0;
  int max_edge_size = 0;
  int matchable_drivers = 0;
  int serving_drivers = 0;
  int served = 0;
  Seconds time_saved = 0;
  Seconds baseline_total = 0;  // sum of all riders' transit baselines
  double occupancy = 0.0;
  double vacancy = 0.0;
  std::string solver;  // solver that produced the solution
  bool fallback = false;
  bool optimal = false;
  int initial_served = -1;  // greedy start of local search, -1 otherwise
  int violations = 0;
  double alg1_ms = 0.0;
  double alg2_ms = 0.0;
  double solver_ms = 0.0;
  bool ok = true;
  std::string error;
};

// Occupancy: served riders per serving driver. Vacancy: share of drivers
// with a feasible match that serve nobody.
double occupancy_rate(int served, int serving_drivers);
double vacancy_rate(int matchable_drivers, int serving_drivers);

struct SolveOutcome {
  Solution solution;
  bool fallback = false;
  int initial_objective = -1;
};

SolveOutcome solve(const MatchHypergraph& h, SolverKind solver, const RunConfig& cfg);

// Full pipeline for one batch; `solution` receives the chosen matches.
IntervalReport run_interval(int interval, const TripSet& trips, const TransitNetwork& net, const RunConfig& cfg,
                            Solution* solution = nullptr);

struct DaySummary {
  std::vector<IntervalReport> intervals;
  std::vector<int> incomplete;
  long total_riders = 0;
  long total_served = 0;
  Seconds total_time_saved = 0;
  int total_violations = 0;
  double served_fraction() const { return total_riders ? double(total_served) / total_riders : 0.0; }
};

TransitNetwork make_network(const RunConfig& cfg);

// Runs every selected interval and writes intervals.csv, timings.csv,
// solutions.jsonl and summary.json into cfg.out_dir.
DaySummary run_day(const RunConfig& cfg);

struct ComparisonRow {
  int interval = 0;
  std::vector<int> served;
  std::vector<Seconds> time_saved;
  std::vector<double> ms;
  std::vector<bool> fallback;
};

// Builds the hypergraph once per interval and runs every solver on it.
// Writes compare.csv into cfg.out_dir.
std::vector<ComparisonRow> compare_solvers(const RunConfig& cfg, const std::vector<SolverKind>& solvers);

std::string intervals_csv_header();
std::string intervals_csv_row(const IntervalReport& r);

}  // namespace mtr
