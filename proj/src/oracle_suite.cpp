#include "mtr/oracle_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "mtr/feasibility.hpp"
#include "mtr/revalidate.hpp"

namespace mtr {

namespace {

// Pairs of neighbouring community areas served by the same line or feeder.
constexpr int kCorridors[][2] = {{3, 4}, {5, 6}, {7, 8}, {9, 14}, {10, 11}, {5, 12}, {7, 13}, {3, 15}};

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

LocationId random_location(const TransitNetwork& net, int area, std::mt19937_64& rng) {
  auto locs = net.area_locations(area);
  return locs[pick(rng, 0, static_cast<int>(locs.size()) - 1)];
}

int downtown(const TransitNetwork& net) {
  for (std::size_t a = 0; a < net.area_count(); ++a) {
    if (net.area(static_cast<int>(a)).kind == AreaKind::kDowntown) return static_cast<int>(a);
  }
  throw NetworkError("network has no downtown area");
}

MatchType random_type(std::mt19937_64& rng) {
  constexpr MatchType types[] = {MatchType::kType1, MatchType::kType2, MatchType::kEither};
  return types[pick(rng, 0, 2)];
}

}  // namespace

TripSet make_small_instance(const TransitNetwork& net, std::uint64_t seed, const SmallInstanceConfig& cfg) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x4fu};
  std::mt19937_64 rng(seq);
  const auto& corridor = kCorridors[pick(rng, 0, std::size(kCorridors) - 1)];
  const int centre = downtown(net);
  const bool inbound = pick(rng, 0, 1) == 0;
  const Seconds base = 7 * 3600 + pick(rng, 0, 7200);

  auto community = [&] { return random_location(net, corridor[pick(rng, 0, 1)], rng); };
  auto city = [&] { return random_location(net, centre, rng); };

  TripSet trips;
  const int drivers = pick(rng, std::min(2, cfg.max_drivers), cfg.max_drivers);
  const int riders = pick(rng, std::max(2, cfg.max_riders / 2), cfg.max_riders);
  for (int k = 0; k < drivers; ++k) {
    DriverTrip d;
    d.id = TripId{k + 1};
    d.origin = inbound ? community() : city();
    d.destination = inbound ? city() : community();
    d.capacity = pick(rng, 1, cfg.max_capacity);
    d.stop_limit = pick(rng, 1, d.capacity);
    d.detour_limit = pick(rng, 300, 1200);
    d.earliest_departure = base + pick(rng, 0, 600);
    const Seconds t = net.car_time(d.origin, d.destination);
    d.latest_arrival = d.earliest_departure + static_cast<Seconds>(std::floor(1.5 * double(t + d.detour_limit)));
    d.match_type = random_type(rng);
    complete_driver(d, net);
    trips.drivers.push_back(std::move(d));
  }
  for (int k = 0; k < riders; ++k) {
    RiderTrip r;
    r.id = TripId{101 + k};
    r.origin = inbound ? community() : city();
    r.destination = inbound ? city() : community();
    r.earliest_departure = base + pick(rng, 0, 600);
    r.match_type = random_type(rng);
    complete_rider(r, net);
    r.latest_arrival = r.earliest_departure + static_cast<Seconds>(std::ceil(1.5 * double(r.baseline_transit_time)));
    trips.riders.push_back(std::move(r));
  }
  validate_trip_set(trips, net);
  return trips;
}

int largest_independent_neighbourhood(const ConflictGraph& g, int v, int stop_at) {
  const auto& nb = g.adjacency[v];
  int best = 0;
  std::vector<int> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (best >= stop_at) return;
    if (chosen.size() + (nb.size() - from) <= static_cast<std::size_t>(best)) return;
    for (std::size_t i = from; i < nb.size() && best < stop_at; ++i) {
      const int u = nb[i];
      bool free = true;
      for (int c : chosen) {
        if (g.adjacent(c, u)) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      chosen.push_back(u);
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return best;
}

SuiteReport run_oracle_suite(const TransitNetwork& net, const SuiteOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  for (int i = 0; i < options.instances; ++i) {
    const std::uint64_t seed = options.seed * 1'000'003ULL + static_cast<std::uint64_t>(i);
    const auto trips = make_small_instance(net, seed, options.instance);
    FeasibilityEngine engine(net, trips);
    const auto h = engine.build();
    ++rep.instances;
    rep.edges += static_cast<long>(h.edge_count());
    auto note = [&](const std::string& what) {
      rep.messages.push_back("instance " + std::to_string(i) + " (seed " + std::to_string(seed) + "): " + what);
    };

    const auto opt = exact_solve(h);
    if (opt.optimal) ++rep.certified;
    else note("exact solver did not certify optimality");
    const auto ig = imp_greedy(h);
    const auto g = to_conflict_graph(h);
    const auto start = greedy_mis(g);
    const auto gr = solution_from_vertices(g, h, start, "greedy");
    LocalSearchOptions ls;
    ls.rule = ImprovementRule::kAnyImp;
    const auto any = solution_from_vertices(g, h, local_search(g, start, ls).vertices, "anyimp");
    ls.rule = ImprovementRule::kBestImp;
    const auto best = solution_from_vertices(g, h, local_search(g, start, ls).vertices, "bestimp");

    rep.optimum_total += opt.objective;
    rep.imp_greedy_total += ig.objective;
    rep.any_imp_total += any.objective;
    rep.best_imp_total += best.objective;

    if (2 * ig.objective < opt.objective) {
      ++rep.ratio;
      note("impgreedy " + std::to_string(ig.objective) + " below half of optimum " + std::to_string(opt.objective));
    }
    if (ig.objective != gr.objective || ig.covered != gr.covered) {
      ++rep.equivalence;
      note("impgreedy and greedy disagree");
    }
    if (gr.objective > any.objective || gr.objective > best.objective || any.objective > opt.objective ||
        best.objective > opt.objective) {
      ++rep.sandwich;
      note("local search outside [greedy, optimum]");
    }
    Revalidator check(net, trips);
    for (const Solution* s : {&opt, &ig, &gr, &any, &best}) {
      const auto v = check.check_solution(s->chosen);
      if (!v.empty()) {
        ++rep.revalidation;
        note(s->solver + ": " + v.front());
      }
    }
    const int limit = h.max_edge_size() + 2;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (largest_independent_neighbourhood(g, static_cast<int>(v), limit) >= limit) {
        ++rep.claw;
        note("claw with " + std::to_string(limit) + " talons at vertex " + std::to_string(v));
      }
    }
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace mtr
