#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtr/network.hpp"
#include "mtr/packing.hpp"
#include "mtr/trip.hpp"

namespace mtr {

struct SmallInstanceConfig {
  int max_drivers = 6;
  int max_riders = 10;
  int max_capacity = 3;
};

// A seeded instance along one community corridor: trips head into or out of
// downtown so that riders share stations and drivers compete for them.
TripSet make_small_instance(const TransitNetwork& net, std::uint64_t seed, const SmallInstanceConfig& cfg = {});

// Largest independent set inside N(v), by exhaustive search. Stops early once
// `stop_at` vertices are found.
int largest_independent_neighbourhood(const ConflictGraph& g, int v, int stop_at);

struct SuiteOptions {
  int instances = 200;
  std::uint64_t seed = 1;
  SmallInstanceConfig instance;
};

struct SuiteReport {
  int instances = 0;
  int certified = 0;  // instances where the exact solver proved optimality
  long edges = 0;
  long optimum_total = 0;
  long imp_greedy_total = 0;
  long any_imp_total = 0;
  long best_imp_total = 0;
  // Violation counts, one per check.
  int ratio = 0;        // 2 * impgreedy < optimum
  int equivalence = 0;  // impgreedy and greedy differ in served count or riders
  int sandwich = 0;     // greedy <= anyimp, bestimp <= optimum broken
  int revalidation = 0; // solutions failing the independent route check
  int claw = 0;         // independent neighbourhood of size K + 2
  double elapsed_ms = 0.0;
  std::vector<std::string> messages;

  bool passed() const {
    return certified == instances && ratio + equivalence + sandwich + revalidation + claw == 0;
  }
};

// Runs every solver on each instance (unreduced engine, no time limits).
SuiteReport run_oracle_suite(const TransitNetwork& net, const SuiteOptions& options);

}  // namespace mtr
