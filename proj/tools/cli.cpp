#include "cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "firefight/monitor.hpp"
#include "firefight/reduction.hpp"
#include "firefight/render.hpp"
#include "firefight/search.hpp"
#include "firefight/strategies.hpp"
#include "firefight/trace.hpp"
#include "firefight/wall_plan.hpp"
#include "json.hpp"

namespace firefight::cli {

using nlohmann::json;

namespace {

json opt_json(const auto& v) { return v ? json(*v) : json(nullptr); }

template <typename T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

struct Spec {
  std::string name;
  std::map<std::string, std::string> args;
};

Spec parse_spec(const std::string& text) {
  Spec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream body(text.substr(colon + 1));
  std::string item;
  while (std::getline(body, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("strategy argument '" + item + "' is not key=value");
    spec.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

std::int64_t arg_int(const Spec& spec, const std::string& key) {
  const auto& v = spec.args.at(key);
  try {
    std::size_t used = 0;
    const auto out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::logic_error&) {
    throw UsageError("strategy argument " + key + "=" + v + " is not an integer");
  }
}

std::string box_text(const Box& b) {
  return "x [" + std::to_string(b.x0) + "," + std::to_string(b.x1) + "] y [" + std::to_string(b.y0) + "," +
         std::to_string(b.y1) + "] (" + std::to_string(b.width()) + " x " + std::to_string(b.height()) + ")";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string status_text(const RunTrace& trace) {
  switch (trace.status) {
    case RunStatus::Controlled: return "controlled at round " + std::to_string(trace.final_round);
    case RunStatus::HorizonReached: return "horizon reached at round " + std::to_string(trace.final_round);
    case RunStatus::StrategyFailed: return "strategy error: " + trace.error;
  }
  return "?";
}

void require_budget(const ExperimentConfig& cfg) {
  if (cfg.budget.empty()) throw UsageError("--budget is required for '" + cfg.command + "'");
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) {
  json window = nullptr;
  if (cfg.window) window = {cfg.window->x0, cfg.window->y0, cfg.window->x1, cfg.window->y1};
  json j = {
      {"command", cfg.command},
      {"topology", to_string(cfg.topology)},
      {"source",
       {{"center", {cfg.source.center.x, cfg.source.center.y}},
        {"radius", cfg.source.radius},
        {"metric", cfg.source.metric ? json(to_string(*cfg.source.metric)) : json(nullptr)}}},
      {"budget", cfg.budget},
      {"strategy", cfg.strategy},
      {"horizon", cfg.horizon},
      {"seed", opt_json(cfg.seed)},
      {"trace", cfg.trace_path},
      {"report", cfg.report_path},
      {"output", cfg.output_path},
      {"search",
       {{"objective", cfg.objective},
        {"candidate_distance", opt_json(cfg.candidate_distance)},
        {"symmetry", cfg.symmetry},
        {"node_cap", cfg.node_cap},
        {"burnt_limit", opt_json(cfg.burnt_limit)},
        {"threads", cfg.threads}}},
      {"sweep", {{"m", cfg.sweep_m}, {"r", cfg.sweep_r}, {"budgets", cfg.sweep_budgets}}},
      {"render", {{"round", opt_json(cfg.render_round)}, {"window", window}, {"format", cfg.format}, {"scale", cfg.scale}}},
      {"reduce", {{"radius_factors", cfg.reduce_radius_factors}}},
  };
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    cfg.command = j.value("command", cfg.command);
    if (j.contains("topology")) cfg.topology = parse_topology(j["topology"].get<std::string>());
    if (j.contains("source")) {
      const auto& s = j["source"];
      if (s.contains("center")) cfg.source.center = {s["center"][0].get<Coord>(), s["center"][1].get<Coord>()};
      cfg.source.radius = s.value("radius", cfg.source.radius);
      if (s.contains("metric") && !s["metric"].is_null()) cfg.source.metric = parse_metric(s["metric"].get<std::string>());
    }
    cfg.budget = j.value("budget", cfg.budget);
    cfg.strategy = j.value("strategy", cfg.strategy);
    cfg.horizon = j.value("horizon", cfg.horizon);
    cfg.seed = opt_from<std::uint64_t>(j, "seed");
    cfg.trace_path = j.value("trace", cfg.trace_path);
    cfg.report_path = j.value("report", cfg.report_path);
    cfg.output_path = j.value("output", cfg.output_path);
    if (j.contains("search")) {
      const auto& s = j["search"];
      cfg.objective = s.value("objective", cfg.objective);
      if (s.contains("candidate_distance")) cfg.candidate_distance = opt_from<int>(s, "candidate_distance");
      cfg.symmetry = s.value("symmetry", cfg.symmetry);
      cfg.node_cap = s.value("node_cap", cfg.node_cap);
      cfg.burnt_limit = opt_from<std::int64_t>(s, "burnt_limit");
      cfg.threads = s.value("threads", cfg.threads);
    }
    if (j.contains("sweep")) {
      const auto& s = j["sweep"];
      cfg.sweep_m = s.value("m", cfg.sweep_m);
      cfg.sweep_r = s.value("r", cfg.sweep_r);
      cfg.sweep_budgets = s.value("budgets", cfg.sweep_budgets);
    }
    if (j.contains("render")) {
      const auto& s = j["render"];
      cfg.render_round = opt_from<std::int64_t>(s, "round");
      if (s.contains("window") && !s["window"].is_null()) {
        const auto& w = s["window"];
        cfg.window = Box{w[0].get<Coord>(), w[1].get<Coord>(), w[2].get<Coord>(), w[3].get<Coord>()};
      }
      cfg.format = s.value("format", cfg.format);
      cfg.scale = s.value("scale", cfg.scale);
    }
    if (j.contains("reduce")) {
      cfg.reduce_radius_factors = j["reduce"].value("radius_factors", cfg.reduce_radius_factors);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::vector<Point> source_points(const ExperimentConfig& cfg) {
  if (cfg.source.radius < 0) throw UsageError("source radius must be nonnegative");
  return ball(cfg.source.center, cfg.source.radius, cfg.source.metric.value_or(natural_metric(cfg.topology)));
}

Budget parse_budget(const std::string& spec) {
  try {
    return Budget::parse(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad budget '") + spec + "': " + e.what());
  }
}

std::unique_ptr<Strategy> make_strategy(const ExperimentConfig& cfg, const std::string& text) {
  const Spec spec = parse_spec(text);
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : spec.args) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
        throw UsageError("strategy '" + spec.name + "' does not take '" + k + "'");
      }
    }
  };
  if (spec.name == "null") {
    allow({});
    return null_strategy();
  }
  if (spec.name == "greedy") {
    allow({});
    return greedy_nearest();
  }
  if (spec.name == "random") {
    allow({"seed"});
    std::optional<std::uint64_t> seed = cfg.seed;
    if (spec.args.contains("seed")) seed = static_cast<std::uint64_t>(arg_int(spec, "seed"));
    if (!seed) throw UsageError("random strategy needs an explicit seed (random:seed=N or --seed)");
    return random_strategy(*seed);
  }
  if (spec.name == "replay") {
    allow({"file"});
    if (!spec.args.contains("file")) throw UsageError("replay strategy needs file=PATH");
    const auto& path = spec.args.at("file");
    RunTrace trace;
    try {
      trace = load_trace(path);
    } catch (const MalformedTrace&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return std::make_unique<ReplayStrategy>(std::move(trace), path);
  }
  if (spec.name == "contain") {
    allow({"m", "r", "t0"});
    if (spec.args.contains("m") != spec.args.contains("r")) throw UsageError("contain needs both m and r, or neither");
    if (spec.args.contains("m")) return containment_strategy(wall_plan(arg_int(spec, "m"), arg_int(spec, "r")));
    if (cfg.source.center != Point{0, 0}) throw UsageError("contain without m,r needs a source centered at the origin");
    const Budget b = parse_budget(cfg.budget);
    std::int64_t m = 0, r = 0;
    if (spec.args.contains("t0")) {
      const auto [sum, len] = b.tail_average();
      if (sum <= 3 * len) throw UsageError("insufficient budget: long-run average must exceed 3");
      m = (len + (sum - 3 * len) - 1) / (sum - 3 * len);
      r = cfg.source.radius + arg_int(spec, "t0");
    } else {
      const auto p = plan_parameters(cfg.source.radius, b);
      m = p.m;
      r = p.r;
    }
    return containment_strategy(wall_plan(m, r));
  }
  throw UsageError("unknown strategy '" + spec.name + "'");
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  require_budget(cfg);
  const Budget b = parse_budget(cfg.budget);
  auto strat = make_strategy(cfg, cfg.strategy);
  auto src = source_points(cfg);
  const FireState initial(cfg.topology, src);
  Box box = bounding_box(src);
  std::size_t burnt = initial.burnt().size(), protected_count = 0;
  const RunTrace trace = run(initial, b, *strat, cfg.horizon, [&](const FireState&, const RoundRecord& rec) {
    protected_count += rec.placed.size();
    burnt += rec.ignited.size();
    for (auto p : rec.ignited) box = bounding_box(std::array{Point{box.x0, box.y0}, Point{box.x1, box.y1}, p});
  });
  if (!cfg.trace_path.empty()) save_trace(cfg.trace_path, trace);
  // A failed round's placements were rejected; the last good state stands.
  if (trace.status == RunStatus::StrategyFailed) err << "error: " << trace.error << '\n';
  out << "status: " << status_text(trace) << '\n';
  out << "burnt: " << burnt << '\n';
  out << "protected: " << protected_count << '\n';
  out << "bbox: " << box_text(box) << '\n';
  return trace.status == RunStatus::StrategyFailed ? kFailed : kOk;
}

int cmd_monitor(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.trace_path.empty()) throw UsageError("monitor needs --trace FILE");
  RunTrace trace;
  try {
    trace = load_trace(cfg.trace_path);
  } catch (const MalformedTrace&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const Budget b = parse_budget(cfg.budget.empty() ? trace.budget : cfg.budget);
  const auto report = check_invariants(trace, b);
  out << report_table(report);
  if (!cfg.report_path.empty()) write_file(cfg.report_path, report_json(report) + "\n");
  return report.ok() ? kOk : kFailed;
}

int cmd_reduce(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  require_budget(cfg);
  const Budget f = parse_budget(cfg.budget);
  std::int64_t r = cfg.source.radius;
  if (r == 0) {
    const Spec spec = parse_spec(cfg.strategy);
    if (spec.name == "contain" && spec.args.contains("r")) r = arg_int(spec, "r");
  }
  ExperimentConfig strong_cfg = cfg;
  strong_cfg.topology = Topology::Strong;
  strong_cfg.source = {{0, 0}, r, Metric::LInf};
  const auto strong_src = source_points(strong_cfg);

  auto strong_strat = make_strategy(strong_cfg, cfg.strategy);
  const RunTrace strong = run(FireState(Topology::Strong, strong_src), f, *strong_strat, cfg.horizon);
  const Budget g = f.split_halves();
  out << "strong: " << strong.strategy << " budget " << f.describe() << ", source l_inf ball radius " << r << ": "
      << status_text(strong) << '\n';
  out << "cartesian: reduce(" << strong.strategy << ") budget " << g.describe() << '\n';

  bool primary_ok = true;
  for (std::size_t k = 0; k < cfg.reduce_radius_factors.size(); ++k) {
    const auto factor = cfg.reduce_radius_factors[k];
    auto red = reduce_to_cartesian(make_strategy(strong_cfg, cfg.strategy), f, strong_src);
    const FireState cart_init(Topology::Cartesian, ball({0, 0}, factor * r, Metric::L1));
    const RunTrace cart = run(cart_init, red.g, *red.strategy, 2 * cfg.horizon);
    if (k == 0 && !cfg.trace_path.empty()) save_trace(cfg.trace_path, cart);
    const auto audit = parity_audit(cart);
    const bool s_ctl = strong.status == RunStatus::Controlled;
    const bool c_ctl = cart.status == RunStatus::Controlled;
    // Control times on the squad time-line (last ignition round + 1): the
    // odd cells next to the wall always burn one round after the strong
    // grid's last ignition image.
    const bool within = !c_ctl || !s_ctl || cart.final_round + 1 <= 2 * (strong.final_round + 1);
    const bool related = s_ctl == c_ctl && within;
    out << "  source l1 ball radius " << factor * r << " (" << factor << "r): " << status_text(cart)
        << "; T_cart <= 2 T_strong: "
        << (s_ctl && c_ctl ? std::to_string(cart.final_round + 1) + " vs " + std::to_string(2 * (strong.final_round + 1)) +
                                 (within ? " yes" : " NO")
                           : std::string("n/a"))
        << "; placements even: " << (audit.placements_even ? "yes" : "NO")
        << "; ignition parity alternates: " << (audit.ignitions_alternate ? "yes" : "NO")
        << "; contained: " << (c_ctl ? "yes" : "no") << '\n';
    if (!audit.first_violation.empty()) out << "    first parity violation: " << audit.first_violation << '\n';
    if (k == 0) primary_ok = related && audit.ok();
  }
  if (strong.status == RunStatus::StrategyFailed) {
    err << "error: strong-grid strategy failed: " << strong.error << '\n';
    return kFailed;
  }
  return primary_ok ? kOk : kFailed;
}

int cmd_search(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  require_budget(cfg);
  SearchConfig sc;
  sc.topology = cfg.topology;
  sc.source = source_points(cfg);
  sc.budget = parse_budget(cfg.budget);
  sc.horizon = cfg.horizon;
  sc.candidate_distance = cfg.candidate_distance;
  sc.symmetry = cfg.symmetry;
  sc.node_cap = cfg.node_cap;
  sc.threads = cfg.threads;
  sc.burnt_limit = cfg.burnt_limit;
  SearchResult res;
  if (cfg.objective == "exhaustive") {
    res = exhaustive_search(sc);
  } else if (cfg.objective == "min-burnt") {
    res = min_burnt_search(sc);
  } else {
    throw UsageError("unknown search objective '" + cfg.objective + "'");
  }
  json j = {{"objective", cfg.objective},
            {"outcome", to_string(res.outcome)},
            {"nodes", res.nodes},
            {"horizon", cfg.horizon},
            {"topology", to_string(sc.topology)},
            {"budget", sc.budget.describe()},
            {"candidate_rule", res.candidate_rule},
            {"symmetry", res.symmetry},
            {"min_rho", opt_json(res.min_rho)},
            {"min_burnt", opt_json(res.min_burnt)},
            {"control_round", opt_json(res.control_round)}};
  if (res.witness) {
    json lines = json::array();
    std::istringstream in(trace_to_string(*res.witness));
    std::string line;
    while (std::getline(in, line)) lines.push_back(json::parse(line));
    j["witness"] = lines;
  }
  out << j.dump() << '\n';
  if (!cfg.report_path.empty()) write_file(cfg.report_path, j.dump(2) + "\n");
  return kOk;
}

namespace {

struct SweepRow {
  std::int64_t m = 0, r = 0;
  std::string budget;
  std::string status;
  std::int64_t round = 0, t4 = 0;
  std::int64_t width = 0, width_bound = 0, height = 0, height_bound = 0;
  bool contained = false;
};

SweepRow sweep_cell(std::int64_t m, std::int64_t r, const std::string& budget_spec) {
  SweepRow row;
  row.m = m;
  row.r = r;
  const Budget b = budget_spec == "auto" ? Budget::containment_default(m) : parse_budget(budget_spec);
  row.budget = b.describe();
  const WallPlan plan = wall_plan(m, r);
  row.t4 = plan.table.end_round[3];
  row.width_bound = plan.table.width_bound;
  row.height_bound = plan.table.height_bound;
  ContainmentStrategy strat(plan);
  const FireState initial(Topology::Strong, plan.source());
  Box box = bounding_box(initial.burnt());
  const RunTrace trace = run(initial, b, strat, row.t4, [&](const FireState&, const RoundRecord& rec) {
    for (auto p : rec.ignited) box = bounding_box(std::array{Point{box.x0, box.y0}, Point{box.x1, box.y1}, p});
  });
  row.status = std::string(to_string(trace.status));
  row.round = trace.final_round;
  row.width = box.width();
  row.height = box.height();
  row.contained = trace.status == RunStatus::Controlled && trace.final_round <= row.t4;
  return row;
}

}  // namespace

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  struct Cell {
    std::int64_t m, r;
    std::string budget;
  };
  std::vector<Cell> cells;
  for (auto m : cfg.sweep_m) {
    for (auto r : cfg.sweep_r) {
      for (const auto& b : cfg.sweep_budgets) {
        if (m < 1 || r < 1) throw UsageError("sweep needs m, r >= 1");
        if (b != "auto") parse_budget(b);
        cells.push_back({m, r, b});
      }
    }
  }
  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = sweep_cell(cells[i].m, cells[i].r, cells[i].budget);
  };
  const int n = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << std::left << std::setw(3) << "m" << std::setw(3) << "r" << std::setw(16) << "budget" << std::setw(15)
      << "status" << std::setw(7) << "T" << std::setw(7) << "T4" << std::setw(12) << "width" << std::setw(12)
      << "height" << "result\n";
  json j = json::array();
  bool all = true;
  for (const auto& row : rows) {
    auto frac = [](std::int64_t v, std::int64_t bound) {
      return std::to_string(v) + "/" + std::to_string(bound) + (v <= bound ? "" : "!");
    };
    out << std::setw(3) << row.m << std::setw(3) << row.r << std::setw(16) << row.budget << std::setw(15) << row.status
        << std::setw(7) << row.round << std::setw(7) << row.t4 << std::setw(12) << frac(row.width, row.width_bound)
        << std::setw(12) << frac(row.height, row.height_bound) << (row.contained ? "pass" : "FAIL") << '\n';
    all = all && row.contained;
    j.push_back({{"m", row.m},
                 {"r", row.r},
                 {"budget", row.budget},
                 {"status", row.status},
                 {"round", row.round},
                 {"t4", row.t4},
                 {"width", row.width},
                 {"width_bound", row.width_bound},
                 {"width_ok", row.width <= row.width_bound},
                 {"height", row.height},
                 {"height_bound", row.height_bound},
                 {"height_ok", row.height <= row.height_bound},
                 {"contained", row.contained}});
  }
  out << rows.size() << " cells, " << std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.contained; })
      << " contained within T4\n";
  if (!cfg.report_path.empty()) write_file(cfg.report_path, j.dump(2) + "\n");
  return all ? kOk : kFailed;
}

int cmd_render(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.trace_path.empty()) throw UsageError("render needs --trace FILE");
  RunTrace trace;
  try {
    trace = load_trace(cfg.trace_path);
  } catch (const MalformedTrace&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const auto last = static_cast<std::int64_t>(trace.records.size());
  const std::int64_t round = cfg.render_round.value_or(last);
  if (round < 0 || round > last) {
    throw UsageError("round " + std::to_string(round) + " outside the trace (0.." + std::to_string(last) + ")");
  }
  const FireState s = state_at(trace, round);
  const Box window = cfg.window.value_or(activity_window(s));
  std::string image;
  if (cfg.format == "text") {
    image = render_text(s, window);
  } else if (cfg.format == "pgm") {
    image = render_pgm(s, window, cfg.scale);
  } else {
    throw UsageError("unknown render format '" + cfg.format + "'");
  }
  if (cfg.output_path.empty()) {
    out << image;
  } else {
    write_file(cfg.output_path, image);
  }
  return kOk;
}

int dispatch(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "run") return cmd_run(cfg, out, err);
    if (cfg.command == "monitor") return cmd_monitor(cfg, out, err);
    if (cfg.command == "reduce") return cmd_reduce(cfg, out, err);
    if (cfg.command == "search") return cmd_search(cfg, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.command == "render") return cmd_render(cfg, out, err);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const MalformedTrace& e) {
    err << "malformed trace: " << e.what() << '\n';
    return kUsage;
  } catch (const StrategyError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace firefight::cli
