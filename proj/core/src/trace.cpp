#include "firefight/trace.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace firefight {

using nlohmann::json;

namespace {

json points_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (auto p : pts) arr.push_back({p.x, p.y});
  return arr;
}

std::vector<Point> points_from(const json& arr, std::int64_t line, const char* field) {
  if (!arr.is_array()) throw MalformedTrace(line, std::string(field) + " must be an array");
  std::vector<Point> out;
  out.reserve(arr.size());
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw MalformedTrace(line, std::string(field) + " entries must be [x,y] integer pairs");
    }
    out.push_back({p[0].get<Coord>(), p[1].get<Coord>()});
  }
  return out;
}

RunStatus status_from(const std::string& s, std::int64_t line) {
  if (s == "controlled") return RunStatus::Controlled;
  if (s == "horizon") return RunStatus::HorizonReached;
  if (s == "strategy_error") return RunStatus::StrategyFailed;
  throw MalformedTrace(line, "unknown status '" + s + "'");
}

}  // namespace

MalformedTrace::MalformedTrace(std::int64_t line, const std::string& what)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}

void write_trace(std::ostream& out, const RunTrace& trace) {
  json header = {{"topology", to_string(trace.topology)},
                 {"initial_burnt", points_json(trace.initial_burnt)},
                 {"budget", trace.budget},
                 {"strategy", trace.strategy},
                 {"seed", trace.seed ? json(*trace.seed) : json(nullptr)}};
  if (!trace.initial_protected.empty()) header["initial_protected"] = points_json(trace.initial_protected);
  out << header.dump() << '\n';
  for (const auto& rec : trace.records) {
    json j = {{"t", rec.t}, {"f", rec.f}, {"placed", points_json(rec.placed)}, {"ignited", points_json(rec.ignited)}};
    out << j.dump() << '\n';
  }
  json footer = {{"status", to_string(trace.status)}, {"round", trace.final_round}, {"error", trace.error}};
  out << footer.dump() << '\n';
}

std::string trace_to_string(const RunTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

RunTrace read_trace(std::istream& in) {
  RunTrace trace;
  std::string line;
  std::int64_t lineno = 0;
  bool have_header = false;
  bool have_footer = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (have_footer) throw MalformedTrace(lineno, "content after the status line");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedTrace(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedTrace(lineno, "expected a JSON object");
    try {
      if (!have_header) {
        trace.topology = parse_topology(j.at("topology").get<std::string>());
        trace.initial_burnt = points_from(j.at("initial_burnt"), lineno, "initial_burnt");
        if (j.contains("initial_protected")) {
          trace.initial_protected = points_from(j["initial_protected"], lineno, "initial_protected");
        }
        trace.budget = j.at("budget").get<std::string>();
        trace.strategy = j.at("strategy").get<std::string>();
        if (j.contains("seed") && !j["seed"].is_null()) trace.seed = j["seed"].get<std::uint64_t>();
        have_header = true;
      } else if (j.contains("status")) {
        trace.status = status_from(j.at("status").get<std::string>(), lineno);
        trace.final_round = j.at("round").get<std::int64_t>();
        trace.error = j.value("error", std::string{});
        have_footer = true;
      } else {
        RoundRecord rec;
        rec.t = j.at("t").get<std::int64_t>();
        rec.f = j.at("f").get<std::int64_t>();
        rec.placed = points_from(j.at("placed"), lineno, "placed");
        rec.ignited = points_from(j.at("ignited"), lineno, "ignited");
        trace.records.push_back(std::move(rec));
      }
    } catch (const json::exception& e) {
      throw MalformedTrace(lineno, std::string("bad field: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw MalformedTrace(lineno, e.what());
    }
  }
  if (!have_header) throw MalformedTrace(lineno + 1, "missing header");
  if (!have_footer) {
    trace.status = RunStatus::HorizonReached;
    trace.final_round = trace.records.empty() ? 0 : trace.records.back().t;
  }
  return trace;
}

RunTrace read_trace_string(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

void save_trace(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace '" + path + "'");
  write_trace(out, trace);
}

RunTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace '" + path + "'");
  return read_trace(in);
}

FireState replay(const RunTrace& trace, const ReplayObserver& observer) {
  FireState state(trace.topology);
  try {
    state = trace.initial_state();
  } catch (const IllegalPlacement& e) {
    throw MalformedTrace(1, e.what());
  }
  std::optional<Budget> budget;
  try {
    budget = Budget::parse(trace.budget);
  } catch (const std::invalid_argument&) {
    // Budgets read from external files may not resolve here; the recorded f is trusted.
  }
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& rec = trace.records[i];
    const auto line = static_cast<std::int64_t>(i) + 2;
    if (rec.t != state.round() + 1) {
      throw MalformedTrace(line, "expected round " + std::to_string(state.round() + 1) + ", got " +
                                     std::to_string(rec.t));
    }
    if (budget && budget->at(rec.t) != rec.f) {
      throw MalformedTrace(line, "recorded f=" + std::to_string(rec.f) + " but budget gives " +
                                     std::to_string(budget->at(rec.t)));
    }
    if (static_cast<std::int64_t>(rec.placed.size()) > rec.f) {
      throw MalformedTrace(line, "more placements than f");
    }
    try {
      state.protect(rec.placed);
    } catch (const IllegalPlacement& e) {
      throw MalformedTrace(line, e.what());
    }
    if (observer) observer(state, rec, ReplayStage::Placed);
    auto ignited = state.spread();
    if (ignited != rec.ignited) {
      throw MalformedTrace(line, "recorded ignitions differ from the replayed spread (" +
                                     std::to_string(rec.ignited.size()) + " recorded, " +
                                     std::to_string(ignited.size()) + " replayed)");
    }
    if (observer) observer(state, rec, ReplayStage::Spread);
  }
  const auto footer_line = static_cast<std::int64_t>(trace.records.size()) + 2;
  if (trace.status == RunStatus::Controlled && !state.is_controlled()) {
    throw MalformedTrace(footer_line, "status says controlled but the fire can still spread");
  }
  return state;
}

FireState state_at(const RunTrace& trace, std::int64_t round) {
  if (round < 0 || round > static_cast<std::int64_t>(trace.records.size())) {
    throw std::out_of_range("round " + std::to_string(round) + " outside trace (0.." +
                            std::to_string(trace.records.size()) + ")");
  }
  FireState state = trace.initial_state();
  for (std::int64_t k = 0; k < round; ++k) {
    const auto& rec = trace.records[static_cast<std::size_t>(k)];
    state.protect(rec.placed);
    state.spread();
  }
  return state;
}

}  // namespace firefight
