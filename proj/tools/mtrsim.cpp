// mtrsim: command-line front end for the matching pipeline.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mtr/generator.hpp"
#include "mtr/harness.hpp"
#include "mtr/network_gen.hpp"
#include "mtr/network_io.hpp"
#include "mtr/oracle_suite.hpp"

namespace {

struct CommonArgs {
  std::string network;
  std::uint64_t gen_network = 1;
  std::string workload;
  std::uint64_t gen_seed = 1;
  double scale = 1.0;
  std::string config = "Medium4";
  double time_limit = -1;
  bool no_time_limit = false;
  std::string metric = "weight-squared";
  bool best_station = false;
  int first = 0;
  int last = mtr::kIntervalsPerDay - 1;
  int threads = 1;
  int interval_threads = 1;
  std::string out = "out";
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  auto* net = cmd->add_option("--network", a.network, "network JSON file");
  cmd->add_option("--gen-network", a.gen_network, "generate the synthetic network with this seed")->excludes(net);
  auto* wl = cmd->add_option("--workload", a.workload, "workload directory written by gen-workload");
  cmd->add_option("--gen-seed", a.gen_seed, "generate trips with this seed")->excludes(wl);
  cmd->add_option("--scale", a.scale, "multiplier on the trips-per-interval curve")->excludes(wl);
  cmd->add_option("--config", a.config, "preset name (Small1..Huge3) or x,y,z");
  auto* tl = cmd->add_option("--time-limit", a.time_limit, "per-round improvement limit in seconds");
  cmd->add_flag("--no-time-limit", a.no_time_limit, "disable the improvement limit")->excludes(tl);
  cmd->add_option("--improvement-metric", a.metric, "weight or weight-squared")
      ->check(CLI::IsMember({"weight", "weight-squared"}));
  cmd->add_flag("--best-station", a.best_station, "single-rider matches use the best station");
  cmd->add_option("--first-interval", a.first, "first interval (0..71)");
  cmd->add_option("--last-interval", a.last, "last interval (0..71)");
  cmd->add_option("--threads", a.threads, "threads inside the feasibility engine");
  cmd->add_option("--interval-threads", a.interval_threads, "intervals processed in parallel");
  cmd->add_option("--out", a.out, "output directory");
  cmd->add_flag("--timings-in-solutions", a.timings, "write elapsed_ms into solutions.jsonl");
}

mtr::RunConfig to_run_config(const CommonArgs& a) {
  mtr::RunConfig cfg;
  if (!a.network.empty()) cfg.network_file = a.network;
  cfg.network_gen.seed = a.gen_network;
  if (!a.workload.empty()) cfg.workload_dir = a.workload;
  cfg.generator.seed = a.gen_seed;
  cfg.generator.scale = a.scale;
  if (auto p = mtr::find_preset(a.config)) {
    cfg.config_name = p->name;
    cfg.reduction = p->reduction;
    cfg.time_limit = p->time_limit;
  } else if (auto r = mtr::parse_reduction(a.config)) {
    cfg.config_name = a.config;
    cfg.reduction = *r;
    cfg.time_limit = std::chrono::seconds(20);
  } else {
    throw CLI::ValidationError("--config", "unknown preset or malformed x,y,z: " + a.config);
  }
  if (a.time_limit >= 0) cfg.time_limit = std::chrono::milliseconds(static_cast<long>(a.time_limit * 1000));
  if (a.no_time_limit) cfg.time_limit.reset();
  cfg.metric = a.metric == "weight" ? mtr::ImprovementMetric::kWeight : mtr::ImprovementMetric::kWeightSquared;
  cfg.best_station = a.best_station;
  cfg.first_interval = a.first;
  cfg.last_interval = a.last;
  cfg.engine_threads = a.threads;
  cfg.interval_threads = a.interval_threads;
  cfg.out_dir = a.out;
  cfg.timings_in_solutions = a.timings;
  return cfg;
}

mtr::SolverKind solver_of(const std::string& name) {
  auto s = mtr::parse_solver(name);
  if (!s) throw CLI::ValidationError("--solver", "unknown solver " + name);
  return *s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transit plus rideshare matching simulator"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  std::string solver = "impgreedy";
  auto* sim = app.add_subcommand("simulate", "run a day (or a range of intervals) with one solver");
  add_common(sim, sim_args);
  sim->add_option("--solver", solver, "exact, impgreedy, greedy, anyimp or bestimp");

  CommonArgs cmp_args;
  std::string solvers = "impgreedy,greedy,anyimp,bestimp";
  auto* cmp = app.add_subcommand("compare", "run several solvers on the same hypergraphs");
  add_common(cmp, cmp_args);
  cmp->add_option("--solvers", solvers, "comma-separated solver list");

  mtr::SuiteOptions suite;
  std::uint64_t suite_network = 1;
  auto* ors = app.add_subcommand("oracle-suite", "approximation-ratio suite on small random instances");
  ors->add_option("--instances", suite.instances, "number of instances")->check(CLI::PositiveNumber);
  ors->add_option("--max-drivers", suite.instance.max_drivers)->check(CLI::Range(1, 12));
  ors->add_option("--max-riders", suite.instance.max_riders)->check(CLI::Range(2, 16));
  ors->add_option("--max-capacity", suite.instance.max_capacity)->check(CLI::Range(1, 4));
  ors->add_option("--seed", suite.seed);
  ors->add_option("--gen-network", suite_network, "network seed");

  mtr::NetworkGenConfig net_cfg;
  std::string net_out;
  auto* gn = app.add_subcommand("gen-network", "write the synthetic network as JSON");
  gn->add_option("--seed", net_cfg.seed);
  gn->add_option("--out", net_out, "output file")->required();

  std::uint64_t wl_network = 1;
  mtr::GeneratorConfig wl_cfg;
  std::string wl_out;
  auto* gw = app.add_subcommand("gen-workload", "write one day of trip announcements");
  gw->add_option("--gen-network", wl_network, "network seed");
  gw->add_option("--seed", wl_cfg.seed);
  gw->add_option("--scale", wl_cfg.scale);
  gw->add_option("--out", wl_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      auto cfg = to_run_config(sim_args);
      cfg.solver = solver_of(solver);
      auto day = mtr::run_day(cfg);
      std::cout << "served " << day.total_served << " of " << day.total_riders << " riders ("
                << day.served_fraction() << "), time saved " << day.total_time_saved << " s\n";
      if (!day.incomplete.empty()) std::cout << day.incomplete.size() << " interval(s) incomplete\n";
      if (day.total_violations > 0) {
        std::cerr << day.total_violations << " constraint violation(s)\n";
        return 2;
      }
      return day.incomplete.empty() ? 0 : 1;
    }
    if (*cmp) {
      auto cfg = to_run_config(cmp_args);
      std::vector<mtr::SolverKind> kinds;
      std::stringstream ss(solvers);
      for (std::string item; std::getline(ss, item, ',');) kinds.push_back(solver_of(item));
      auto rows = mtr::compare_solvers(cfg, kinds);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        long served = 0;
        for (const auto& r : rows) served += r.served[k];
        std::cout << mtr::to_string(kinds[k]) << ": " << served << " served\n";
      }
      return 0;
    }
    if (*ors) {
      mtr::NetworkGenConfig nc;
      nc.seed = suite_network;
      mtr::TransitNetwork net(mtr::generate_network_spec(nc));
      auto rep = mtr::run_oracle_suite(net, suite);
      for (const auto& m : rep.messages) std::cerr << m << '\n';
      std::cout << "instances " << rep.instances << ", certified optimal " << rep.certified << ", edges "
                << rep.edges << "\n"
                << "served: optimum " << rep.optimum_total << ", impgreedy " << rep.imp_greedy_total << ", anyimp "
                << rep.any_imp_total << ", bestimp " << rep.best_imp_total << "\n"
                << "violations: ratio " << rep.ratio << ", equivalence " << rep.equivalence << ", sandwich "
                << rep.sandwich << ", revalidation " << rep.revalidation << ", claw " << rep.claw << "\n"
                << "elapsed " << rep.elapsed_ms / 1000.0 << " s\n";
      return rep.passed() ? 0 : 2;
    }
    if (*gn) {
      mtr::save_network(mtr::generate_network_spec(net_cfg), net_out);
      return 0;
    }
    if (*gw) {
      mtr::NetworkGenConfig nc;
      nc.seed = wl_network;
      mtr::TransitNetwork net(mtr::generate_network_spec(nc));
      mtr::write_workload(wl_out, net, wl_cfg);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
