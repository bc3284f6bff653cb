#include "mtr/harness.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "mtr/network_io.hpp"
#include "mtr/revalidate.hpp"
#include "parallel.hpp"

namespace mtr {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

const char* to_string(SolverKind solver) {
  switch (solver) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kImpGreedy:
      return "impgreedy";
    case SolverKind::kGreedy:
      return "greedy";
    case SolverKind::kAnyImp:
      return "anyimp";
    case SolverKind::kBestImp:
      return "bestimp";
  }
  return "?";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  const auto n = lower(name);
  for (auto s : {SolverKind::kExact, SolverKind::kImpGreedy, SolverKind::kGreedy, SolverKind::kAnyImp,
                 SolverKind::kBestImp}) {
    if (n == to_string(s)) return s;
  }
  return std::nullopt;
}

std::vector<Preset> all_presets() {
  using std::chrono::seconds;
  std::vector<Preset> out;
  const std::pair<const char*, double> tiers[] = {{"Small", 20.0}, {"Medium", 30.0}, {"Large", 40.0}};
  for (const auto& [tier, x] : tiers) {
    const int ys[] = {300, 600, 300, 600};
    const int zs[] = {10, 10, 20, 20};
    for (int k = 0; k < 4; ++k) {
      std::string name = std::string(tier) + std::to_string(k + 1);
      // Presets with a 10-second improvement limit carry a "-10" suffix.
      const bool ten = k == 3 || (std::string(tier) == "Large" && k == 2);
      out.push_back({ten ? name + "-10" : name, {x, ys[k], zs[k]}, seconds(ten ? 10 : 20)});
    }
  }
  out.push_back({"Huge1", {100.0, 600, 10}, seconds(20)});
  out.push_back({"Huge2", {100.0, 2500, 20}, seconds(20)});
  out.push_back({"Huge3", {100.0, 10000, 30}, seconds(20)});
  return out;
}

std::optional<Preset> find_preset(std::string_view name) {
  const auto n = lower(name);
  for (const auto& p : all_presets()) {
    const auto pn = lower(p.name);
    if (pn == n) return p;
    if (pn.size() > 3 && pn.ends_with("-10") && pn.substr(0, pn.size() - 3) == n) return p;
  }
  return std::nullopt;
}

std::optional<ReductionConfig> parse_reduction(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  if (!s.empty() && s.find('%') != std::string::npos) s.erase(std::remove(s.begin(), s.end(), '%'), s.end());
  std::istringstream in(s);
  ReductionConfig cfg;
  if (!(in >> cfg.keep_percent >> cfg.driver_cap >> cfg.rider_cap)) return std::nullopt;
  std::string rest;
  if (in >> rest) return std::nullopt;
  try {
    validate_reduction(cfg);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return cfg;
}

double occupancy_rate(int served, int serving_drivers) {
  return serving_drivers > 0 ? static_cast<double>(served) / serving_drivers : 0.0;
}

double vacancy_rate(int matchable_drivers, int serving_drivers) {
  return matchable_drivers > 0 ? static_cast<double>(matchable_drivers - serving_drivers) / matchable_drivers : 0.0;
}

SolveOutcome solve(const MatchHypergraph& h, SolverKind solver, const RunConfig& cfg) {
  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  switch (solver) {
    case SolverKind::kExact:
      out.solution = exact_solve(h, cfg.exact);
      break;
    case SolverKind::kImpGreedy:
      out.solution = imp_greedy(h);
      break;
    case SolverKind::kGreedy:
    case SolverKind::kAnyImp:
    case SolverKind::kBestImp: {
      ConflictGraph g;
      try {
        g = to_conflict_graph(h, cfg.adjacency_budget);
      } catch (const ConflictGraphTooLarge& e) {
        std::cerr << "conflict graph too large to hold in memory (" << e.what() << "); falling back to impgreedy\n";
        out.solution = imp_greedy(h);
        out.fallback = true;
        break;
      }
      auto start = greedy_mis(g);
      if (solver == SolverKind::kGreedy) {
        out.solution = solution_from_vertices(g, h, start, "greedy");
        break;
      }
      out.initial_objective = solution_from_vertices(g, h, start, "greedy").objective;
      LocalSearchOptions ls;
      ls.rule = solver == SolverKind::kAnyImp ? ImprovementRule::kAnyImp : ImprovementRule::kBestImp;
      ls.metric = cfg.metric;
      ls.round_limit = cfg.time_limit;
      auto res = local_search(g, std::move(start), ls);
      out.solution = solution_from_vertices(g, h, res.vertices, to_string(solver));
      break;
    }
  }
  out.solution.elapsed_ms = ms_since(t0);
  return out;
}

IntervalReport run_interval(int interval, const TripSet& trips, const TransitNetwork& net, const RunConfig& cfg,
                            Solution* solution) {
  IntervalReport r;
  r.interval = interval;
  r.riders = static_cast<int>(trips.riders.size());
  r.drivers = static_cast<int>(trips.drivers.size());
  r.solver = to_string(cfg.solver);
  for (const auto& rider : trips.riders) r.baseline_total += rider.baseline_transit_time;
  try {
    EngineOptions opts;
    opts.reduction = cfg.reduction;
    opts.best_station = cfg.best_station;
    opts.threads = cfg.engine_threads;
    FeasibilityEngine engine(net, trips, opts);
    auto h = engine.build();
    r.alg1_ms = engine.stats().alg1_ms;
    r.alg2_ms = engine.stats().alg2_ms;
    r.base_matches = engine.stats().base_after_reduction;
    r.edges = h.edge_count();
    r.max_edge_size = h.max_edge_size();
    r.matchable_drivers = static_cast<int>(h.drivers().size());

    auto outcome = solve(h, cfg.solver, cfg);
    const Solution& sol = outcome.solution;
    r.solver_ms = sol.elapsed_ms;
    r.solver = sol.solver;
    r.fallback = outcome.fallback;
    r.optimal = sol.optimal;
    r.initial_served = outcome.initial_objective;
    r.served = sol.objective;
    r.serving_drivers = static_cast<int>(sol.chosen.size());
    for (const auto& m : sol.chosen) r.time_saved += m.time_saved;
    r.occupancy = occupancy_rate(r.served, r.serving_drivers);
    r.vacancy = vacancy_rate(r.matchable_drivers, r.serving_drivers);

    Revalidator check(net, trips);
    auto violations = check.check_solution(sol.chosen);
    r.violations = static_cast<int>(violations.size());
    for (const auto& v : violations) std::cerr << "interval " << interval << ": " << v << '\n';
    if (solution) *solution = sol;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = "interval " + std::to_string(interval) + ": " + e.what();
  }
  return r;
}

TransitNetwork make_network(const RunConfig& cfg) {
  if (cfg.network_file) return load_network(*cfg.network_file);
  return TransitNetwork(generate_network_spec(cfg.network_gen));
}

std::string intervals_csv_header() {
  return "interval,period,riders,drivers,base_matches,edges,max_edge_size,matchable_drivers,serving_drivers,"
         "served,time_saved,occupancy,vacancy,solver,fallback,optimal,initial_served,violations,status";
}

std::string intervals_csv_row(const IntervalReport& r) {
  std::ostringstream os;
  os << r.interval << ',' << to_string(period_of(r.interval)) << ',' << r.riders << ',' << r.drivers << ','
     << r.base_matches << ',' << r.edges << ',' << r.max_edge_size << ',' << r.matchable_drivers << ','
     << r.serving_drivers << ',' << r.served << ',' << r.time_saved << ',' << fixed(r.occupancy) << ','
     << fixed(r.vacancy) << ',' << r.solver << ',' << (r.fallback ? 1 : 0) << ',' << (r.optimal ? 1 : 0) << ','
     << r.initial_served << ',' << r.violations << ',' << (r.ok ? "ok" : "failed");
  return os.str();
}

namespace {

void check_range(const RunConfig& cfg) {
  if (cfg.first_interval < 0 || cfg.last_interval >= kIntervalsPerDay || cfg.first_interval > cfg.last_interval) {
    throw std::invalid_argument("interval range must lie within 0..71");
  }
}

// Trips for each selected interval, generated or loaded.
std::vector<TripSet> workload(const RunConfig& cfg, const TransitNetwork& net) {
  std::vector<TripSet> out;
  if (cfg.workload_dir) {
    auto all = load_workload(*cfg.workload_dir, net);
    if (static_cast<int>(all.size()) <= cfg.last_interval) throw std::runtime_error("workload has too few intervals");
    for (int t = cfg.first_interval; t <= cfg.last_interval; ++t) out.push_back(std::move(all[t]));
    return out;
  }
  const auto profile = build_demand_profile(net, cfg.generator);
  for (int t = cfg.first_interval; t <= cfg.last_interval; ++t) {
    out.push_back(generate_interval(t, net, profile, cfg.generator));
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

DaySummary run_day(const RunConfig& cfg) {
  check_range(cfg);
  auto net = make_network(cfg);
  auto trips = workload(cfg, net);
  const std::size_t n = trips.size();
  std::vector<IntervalReport> reports(n);
  std::vector<Solution> solutions(n);
  detail::parallel_for(n, cfg.interval_threads, [&](std::size_t k) {
    const int t = cfg.first_interval + static_cast<int>(k);
    reports[k] = run_interval(t, trips[k], net, cfg, &solutions[k]);
  });

  std::filesystem::create_directories(cfg.out_dir);
  auto csv = open_out(cfg.out_dir / "intervals.csv");
  auto timings = open_out(cfg.out_dir / "timings.csv");
  auto sols = open_out(cfg.out_dir / "solutions.jsonl");
  csv << intervals_csv_header() << '\n';
  timings << "interval,alg1_ms,alg2_ms,solver_ms\n";

  DaySummary day;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& r = reports[k];
    csv << intervals_csv_row(r) << '\n';
    timings << r.interval << ',' << fixed(r.alg1_ms, 3) << ',' << fixed(r.alg2_ms, 3) << ',' << fixed(r.solver_ms, 3)
            << '\n';
    if (!r.ok) {
      std::cerr << r.error << '\n';
      day.incomplete.push_back(r.interval);
    } else {
      auto j = nlohmann::json::parse(solution_to_json(solutions[k], cfg.timings_in_solutions));
      nlohmann::json line;
      line["interval"] = r.interval;
      for (auto it = j.begin(); it != j.end(); ++it) line[it.key()] = it.value();
      sols << line.dump() << '\n';
    }
    day.total_riders += r.riders;
    day.total_served += r.served;
    day.total_time_saved += r.time_saved;
    day.total_violations += r.violations;
  }
  day.intervals = std::move(reports);

  Seconds baseline_total = 0;
  double occupancy_sum = 0;
  double vacancy_sum = 0;
  int occupancy_n = 0;
  int vacancy_n = 0;
  long drivers = 0;
  for (const auto& r : day.intervals) {
    baseline_total += r.baseline_total;
    drivers += r.drivers;
    if (r.serving_drivers > 0) {
      occupancy_sum += r.occupancy;
      ++occupancy_n;
    }
    if (r.matchable_drivers > 0) {
      vacancy_sum += r.vacancy;
      ++vacancy_n;
    }
  }
  nlohmann::json s;
  s["solver"] = to_string(cfg.solver);
  s["config"] = {{"name", cfg.config_name},
                 {"x", cfg.reduction.keep_percent},
                 {"y", cfg.reduction.driver_cap},
                 {"z", cfg.reduction.rider_cap}};
  s["seed"] = cfg.generator.seed;
  s["intervals_run"] = n;
  s["incomplete_intervals"] = day.incomplete;
  s["complete"] = day.incomplete.empty();
  s["total_riders"] = day.total_riders;
  s["total_drivers"] = drivers;
  s["total_served"] = day.total_served;
  s["served_fraction"] = day.served_fraction();
  s["total_time_saved"] = day.total_time_saved;
  s["time_saved_fraction"] = baseline_total ? double(day.total_time_saved) / baseline_total : 0.0;
  s["avg_served_per_interval"] = n ? double(day.total_served) / n : 0.0;
  s["avg_occupancy"] = occupancy_n ? occupancy_sum / occupancy_n : 0.0;
  s["avg_vacancy"] = vacancy_n ? vacancy_sum / vacancy_n : 0.0;
  s["violations"] = day.total_violations;
  // Served fractions reported for the real-data setting; context only.
  s["reference_served_fraction"] = {{"impgreedy_greedy", 0.605}, {"anyimp_bestimp", 0.624}};
  open_out(cfg.out_dir / "summary.json") << s.dump(2) << '\n';
  return day;
}

std::vector<ComparisonRow> compare_solvers(const RunConfig& cfg, const std::vector<SolverKind>& solvers) {
  check_range(cfg);
  auto net = make_network(cfg);
  auto trips = workload(cfg, net);
  std::vector<ComparisonRow> rows(trips.size());
  std::vector<std::string> errors(trips.size());
  detail::parallel_for(trips.size(), cfg.interval_threads, [&](std::size_t k) {
    auto& row = rows[k];
    row.interval = cfg.first_interval + static_cast<int>(k);
    try {
      EngineOptions opts;
      opts.reduction = cfg.reduction;
      opts.best_station = cfg.best_station;
      opts.threads = cfg.engine_threads;
      FeasibilityEngine engine(net, trips[k], opts);
      auto h = engine.build();
      Revalidator check(net, trips[k]);
      for (auto s : solvers) {
        auto out = solve(h, s, cfg);
        const auto v = check.check_solution(out.solution.chosen);
        if (!v.empty()) throw std::runtime_error(std::string(to_string(s)) + ": " + v.front());
        Seconds saved = 0;
        for (const auto& m : out.solution.chosen) saved += m.time_saved;
        row.served.push_back(out.solution.objective);
        row.time_saved.push_back(saved);
        row.ms.push_back(out.solution.elapsed_ms);
        row.fallback.push_back(out.fallback);
      }
    } catch (const std::exception& e) {
      errors[k] = "interval " + std::to_string(row.interval) + ": " + e.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  std::filesystem::create_directories(cfg.out_dir);
  auto csv = open_out(cfg.out_dir / "compare.csv");
  csv << "interval";
  for (auto s : solvers) csv << ',' << to_string(s) << "_served," << to_string(s) << "_time_saved," << to_string(s)
                             << "_ms";
  csv << '\n';
  for (const auto& row : rows) {
    csv << row.interval;
    for (std::size_t k = 0; k < solvers.size(); ++k) {
      csv << ',' << row.served[k] << ',' << row.time_saved[k] << ',' << fixed(row.ms[k], 3);
    }
    csv << '\n';
  }
  return rows;
}

}  // namespace mtr
