#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli.hpp"

using firefight::cli::ExperimentConfig;

namespace {

// Flags only override the config file when they are given explicitly, so
// each option carries its own setter that runs after parsing.
struct Binder {
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> setters;

  template <typename T, typename F>
  void add(CLI::App* app, const std::string& name, T& storage, const std::string& help, F apply) {
    auto* opt = app->add_option(name, storage, help);
    setters.emplace_back(opt, [&storage, apply](ExperimentConfig& c) { apply(c, storage); });
  }
  void flag(CLI::App* app, const std::string& name, const std::string& help,
            std::function<void(ExperimentConfig&)> apply) {
    setters.emplace_back(app->add_flag(name, help), std::move(apply));
  }
  void apply(ExperimentConfig& cfg) const {
    for (const auto& [opt, fn] : setters) {
      if (opt->count() > 0) fn(cfg);
    }
  }
};

struct Storage {
  std::string topology, metric, budget, strategy, trace, report, output, objective, format, candidate;
  std::vector<firefight::Coord> center, window;
  std::int64_t radius = 0, horizon = 0, burnt_limit = 0, round = 0;
  std::uint64_t seed = 0, node_cap = 0;
  int threads = 1, scale = 1;
  std::vector<std::int64_t> sweep_m, sweep_r, factors;
  std::vector<std::string> budgets;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Firefighter experiments on infinite planar grids"};
  app.require_subcommand(1);
  std::string config_path;
  bool print_config = false;
  Storage st;
  Binder bind;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config; explicit flags override it");
    sub->add_flag("--print-config", print_config, "print the effective config as JSON and exit");
    bind.add(sub, "--topology", st.topology, "cartesian | strong | triangular",
             [](ExperimentConfig& c, const std::string& v) { c.topology = firefight::parse_topology(v); });
    bind.add(sub, "--center", st.center, "source center X Y",
             [](ExperimentConfig& c, const std::vector<firefight::Coord>& v) { c.source.center = {v.at(0), v.at(1)}; });
    bind.add(sub, "--radius", st.radius, "source ball radius",
             [](ExperimentConfig& c, std::int64_t v) { c.source.radius = v; });
    bind.add(sub, "--metric", st.metric, "source ball metric: l1 | linf (default: the topology's own)",
             [](ExperimentConfig& c, const std::string& v) { c.source.metric = firefight::parse_metric(v); });
    bind.add(sub, "--budget", st.budget, "const:C | periodic:A,B,.. | prefix:A,../B,.. | table:T=F,.. | table:FILE",
             [](ExperimentConfig& c, const std::string& v) { c.budget = v; });
    bind.add(sub, "--strategy", st.strategy, "null | greedy | random:seed=N | replay:file=PATH | contain[:m=M,r=R]",
             [](ExperimentConfig& c, const std::string& v) { c.strategy = v; });
    bind.add(sub, "--horizon", st.horizon, "round limit",
             [](ExperimentConfig& c, std::int64_t v) { c.horizon = v; });
    bind.add(sub, "--seed", st.seed, "seed for random strategies",
             [](ExperimentConfig& c, std::uint64_t v) { c.seed = v; });
    bind.add(sub, "--trace", st.trace, "trace file",
             [](ExperimentConfig& c, const std::string& v) { c.trace_path = v; });
    bind.add(sub, "--report", st.report, "JSON report file",
             [](ExperimentConfig& c, const std::string& v) { c.report_path = v; });
    bind.add(sub, "--threads", st.threads, "worker threads",
             [](ExperimentConfig& c, int v) { c.threads = v; });
  };

  auto* run = app.add_subcommand("run", "simulate one strategy and optionally save its trace");
  auto* monitor = app.add_subcommand("monitor", "check the front invariants of a saved trace");
  auto* reduce = app.add_subcommand("reduce", "run a strong-grid strategy through the Cartesian reduction");
  auto* search = app.add_subcommand("search", "exhaustive or min-burnt search over firefighter placements");
  auto* sweep = app.add_subcommand("sweep", "run the wall construction over a grid of (m, r)");
  auto* render = app.add_subcommand("render", "draw one round of a saved trace");
  for (auto* sub : {run, monitor, reduce, search, sweep, render}) common(sub);

  bind.add(search, "--objective", st.objective, "exhaustive | min-burnt",
           [](ExperimentConfig& c, const std::string& v) { c.objective = v; });
  bind.add(search, "--candidate-distance", st.candidate, "placement radius around the fire, or 'none'",
           [](ExperimentConfig& c, const std::string& v) {
             if (v == "none") {
               c.candidate_distance.reset();
             } else {
               c.candidate_distance = std::stoi(v);
             }
           });
  bind.flag(search, "--no-symmetry", "disable symmetry reduction", [](ExperimentConfig& c) { c.symmetry = false; });
  bind.add(search, "--node-cap", st.node_cap, "node budget before giving up",
           [](ExperimentConfig& c, std::uint64_t v) { c.node_cap = v; });
  bind.add(search, "--burnt-limit", st.burnt_limit, "min-burnt: only look for solutions with fewer burnt points than this",
           [](ExperimentConfig& c, std::int64_t v) { c.burnt_limit = v; });

  bind.add(sweep, "--m", st.sweep_m, "values of m", [](ExperimentConfig& c, const auto& v) { c.sweep_m = v; });
  bind.add(sweep, "--r", st.sweep_r, "values of r", [](ExperimentConfig& c, const auto& v) { c.sweep_r = v; });
  bind.add(sweep, "--budgets", st.budgets, "budget specs, or 'auto' for the default containment budget",
           [](ExperimentConfig& c, const auto& v) { c.sweep_budgets = v; });

  bind.add(render, "--round", st.round, "round to draw (default: last)",
           [](ExperimentConfig& c, std::int64_t v) { c.render_round = v; });
  bind.add(render, "--window", st.window, "X0 Y0 X1 Y1 (default: activity box plus one)",
           [](ExperimentConfig& c, const std::vector<firefight::Coord>& v) {
             c.window = firefight::Box{v.at(0), v.at(1), v.at(2), v.at(3)};
           });
  bind.add(render, "--format", st.format, "text | pgm", [](ExperimentConfig& c, const std::string& v) { c.format = v; });
  bind.add(render, "--scale", st.scale, "pgm pixels per cell", [](ExperimentConfig& c, int v) { c.scale = v; });
  bind.add(render, "--output", st.output, "output file (default: stdout)",
           [](ExperimentConfig& c, const std::string& v) { c.output_path = v; });

  bind.add(reduce, "--radius-factors", st.factors, "Cartesian source radius as multiples of r (first one decides)",
           [](ExperimentConfig& c, const auto& v) { c.reduce_radius_factors = v; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : firefight::cli::kUsage;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = firefight::cli::load_config(config_path);
    cfg.command = app.get_subcommands().front()->get_name();
    bind.apply(cfg);
    if (st.center.size() > 2 || (st.window.size() != 0 && st.window.size() != 4)) {
      throw firefight::cli::UsageError("--center takes 2 values and --window 4");
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return firefight::cli::kUsage;
  }
  if (print_config) {
    std::cout << firefight::cli::config_to_json(cfg) << '\n';
    return 0;
  }
  return firefight::cli::dispatch(cfg, std::cout, std::cerr);
}
