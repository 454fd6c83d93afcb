#include "firefight/monitor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "firefight/trace.hpp"
#include "json.hpp"

namespace firefight {

namespace {

std::int64_t line_value(Point p, int d) {
  return kDirections[d].i * std::int64_t{p.x} + kDirections[d].j * std::int64_t{p.y};
}

void require_cartesian(Topology topo) {
  if (topo != Topology::Cartesian) throw std::invalid_argument("fire fronts are defined on the Cartesian grid only");
}

// Burnt-point counts per line value; c only moves forward because burnt
// sets only grow.
class LineCounter {
 public:
  void add(Point p) {
    for (int d = 0; d < 4; ++d) ++count_[d][line_value(p, d)];
  }
  PerDirection offsets() {
    for (int d = 0; d < 4; ++d) {
      while (count_[d].contains(c_[d])) ++c_[d];
    }
    return c_;
  }

 private:
  std::array<std::unordered_map<std::int64_t, std::int64_t>, 4> count_;
  PerDirection c_{};
};

std::string fmt_q(std::int64_t q) {
  std::ostringstream out;
  if (q < 0) {
    out << '-';
    q = -q;
  }
  out << q / 4;
  const std::int64_t rem = q % 4;
  if (rem == 1) out << ".25";
  if (rem == 2) out << ".5";
  if (rem == 3) out << ".75";
  return out.str();
}

}  // namespace

PerDirection front_offsets(const FireState& s) {
  require_cartesian(s.topology());
  PerDirection c{};
  for (int d = 0; d < 4; ++d) {
    std::unordered_map<std::int64_t, bool> seen;
    for (auto p : s.burnt()) seen[line_value(p, d)] = true;
    while (seen.contains(c[d])) ++c[d];
  }
  return c;
}

PerDirection front_lengths_q(const PerDirection& c) {
  PerDirection rho{};
  for (int d = 0; d < 4; ++d) {
    const auto [i, j] = kDirections[d];
    rho[d] = 2 * (c[dir_index(i, -j)] + c[dir_index(-i, j)]);
  }
  return rho;
}

Potentials potentials(const FireState& s, const PerDirection& c) {
  require_cartesian(s.topology());
  Potentials out;
  for (auto p : s.endangered()) {
    std::array<bool, 4> on{};
    int k = 0;
    for (int d = 0; d < 4; ++d) {
      on[d] = line_value(p, d) == c[d];
      k += on[d];
    }
    if (k == 0) continue;
    if (k > 2) throw std::domain_error("point on more than two fronts; the source must contain the origin");
    for (int d = 0; d < 4; ++d) {
      if (!on[d]) continue;
      out.phi_q[d] += 4 / k;
      if (k == 2) ++out.corners[d];
    }
    out.total_q += 4;
  }
  return out;
}

Potentials potentials(const FireState& s) { return potentials(s, front_offsets(s)); }

Potentials initial_potentials(std::size_t source_size) {
  Potentials out;
  const auto n = static_cast<std::int64_t>(source_size);
  out.phi_q.fill(n);
  out.total_q = 4 * n;
  return out;
}

std::array<int, 4> activity(const PerDirection& c_t, const PerDirection& c_next) {
  std::array<int, 4> a{};
  for (int d = 0; d < 4; ++d) {
    const auto diff = c_next[d] - c_t[d];
    if (diff != 0 && diff != 1) {
      throw std::domain_error("front offset changed by " + std::to_string(diff) + " in one round");
    }
    a[d] = static_cast<int>(diff);
  }
  return a;
}

namespace {

std::vector<FrontMetrics> walk(const RunTrace& trace, const Budget* budget) {
  require_cartesian(trace.topology);
  const bool has_origin = trace.initial_burnt.empty() ||
                          std::find(trace.initial_burnt.begin(), trace.initial_burnt.end(), Point{0, 0}) !=
                              trace.initial_burnt.end();
  if (!has_origin) throw std::invalid_argument("fire fronts need a source containing the origin");

  std::vector<FrontMetrics> rounds;
  FrontMetrics zero;
  const auto init = initial_potentials(trace.initial_burnt.size());
  zero.phi_q = init.phi_q;
  zero.phi_total_q = init.total_q;
  rounds.push_back(zero);

  LineCounter lines;
  for (auto p : trace.initial_burnt) lines.add(p);

  // Unattributed firefighters bucketed by line value per direction.
  std::array<std::unordered_map<std::int64_t, std::vector<Point>>, 4> waiting;
  PointSet attributed;
  PerDirection fstar_dir{};
  std::int64_t placed = 0;

  auto on_stage = [&](const FireState& s, const RoundRecord& rec, ReplayStage stage) {
    if (stage == ReplayStage::Spread) {
      for (auto p : rec.ignited) lines.add(p);
      return;
    }
    FrontMetrics m;
    m.t = rec.t;
    m.c = lines.offsets();
    m.rho_q = front_lengths_q(m.c);
    for (auto v : m.c) m.rho += v;
    const auto pot = potentials(s, m.c);
    m.phi_q = pot.phi_q;
    m.phi_total_q = pot.total_q;
    m.corners = pot.corners;
    for (auto p : rec.placed) {
      for (int d = 0; d < 4; ++d) waiting[d][line_value(p, d)].push_back(p);
    }
    placed += static_cast<std::int64_t>(rec.placed.size());
    for (int d = 0; d < 4; ++d) {
      auto it = waiting[d].find(m.c[d]);
      if (it == waiting[d].end()) continue;
      for (auto p : it->second) {
        if (attributed.insert(p).second) ++fstar_dir[d];
      }
      waiting[d].erase(it);
    }
    m.fstar_dir = fstar_dir;
    m.placed = placed;
    m.fstar = budget ? budget->cumulative(rec.t) : placed;
    rounds.push_back(m);
  };
  replay(trace, on_stage);

  // Activity needs c one step past the last snapshot: the burnt set after
  // the final spread.
  const PerDirection c_final = lines.offsets();
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    const PerDirection& next = k + 1 < rounds.size() ? rounds[k + 1].c : c_final;
    if (k == 0) {
      // Lighting a larger source moves every front by its radius at once.
      for (int d = 0; d < 4; ++d) rounds[0].a[d] = static_cast<int>(next[d]);
      rounds[0].a_total = rounds[0].a[0] + rounds[0].a[1] + rounds[0].a[2] + rounds[0].a[3];
      continue;
    }
    try {
      rounds[k].a = activity(rounds[k].c, next);
    } catch (const std::domain_error& e) {
      throw MalformedTrace(static_cast<std::int64_t>(k) + 2, e.what());
    }
    rounds[k].a_total = rounds[k].a[0] + rounds[k].a[1] + rounds[k].a[2] + rounds[k].a[3];
  }
  return rounds;
}

CheckResult make_check(std::string name, std::string statement) {
  CheckResult c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  return c;
}

std::string dir_name(int d) {
  const auto [i, j] = kDirections[d];
  return std::string("(") + (i > 0 ? "+" : "-") + "," + (j > 0 ? "+" : "-") + ")";
}

}  // namespace

std::vector<PerDirection> attribute_firefighters(const RunTrace& trace) {
  std::vector<PerDirection> out;
  for (const auto& m : walk(trace, nullptr)) out.push_back(m.fstar_dir);
  return out;
}

bool MonitorReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

MonitorReport check_invariants(const RunTrace& trace, const Budget& b) {
  MonitorReport report;
  report.rounds = walk(trace, &b);

  CheckResult A = make_check("A", "phi_ij <= rho_ij for t >= 1");
  CheckResult B = make_check("B", "a_ij = 0 iff phi_ij = 0 for t >= 1");
  CheckResult C = make_check("C", "rho >= 2f*-1 implies phi > rho/2");
  CheckResult D = make_check("D", "rho >= 2f*-1 implies phi_ij + phi_-i-j > 0");
  CheckResult E = make_check("E", "f*(tau) <= (3tau+1)/2 for tau <= t implies rho >= 3t");
  CheckResult F = make_check("F", "phi_ij - (1/4 + c_ij - f*_ij) >= 0 (diagnostic)");
  F.asserted = false;

  bool cap_holds = true;
  for (const auto& m : report.rounds) {
    const auto t = m.t;
    if (t >= 1) {
      ++A.checked;
      ++B.checked;
      for (int d = 0; d < 4; ++d) {
        if (m.phi_q[d] > m.rho_q[d]) {
          A.violations.push_back({t, dir_name(d) + ": phi=" + fmt_q(m.phi_q[d]) + " rho=" + fmt_q(m.rho_q[d])});
        }
        if ((m.a[d] == 0) != (m.phi_q[d] == 0)) {
          B.violations.push_back({t, dir_name(d) + ": a=" + std::to_string(m.a[d]) + " phi=" + fmt_q(m.phi_q[d])});
        }
      }
    }
    if (m.rho >= 2 * m.fstar - 1) {
      ++C.checked;
      ++D.checked;
      if (!(2 * m.phi_total_q > 4 * m.rho)) {
        C.violations.push_back({t, "phi=" + fmt_q(m.phi_total_q) + " rho=" + std::to_string(m.rho)});
      }
      for (int d : {0, 1}) {
        const auto [i, j] = kDirections[d];
        if (m.phi_q[d] + m.phi_q[dir_index(-i, -j)] <= 0) {
          D.violations.push_back({t, dir_name(d) + " and its opposite both have zero potential"});
        }
      }
    } else {
      ++C.vacuous;
      ++D.vacuous;
    }
    if (cap_holds && 2 * m.fstar > 3 * t + 1) {
      cap_holds = false;
      E.void_from = t;
    }
    if (cap_holds) {
      ++E.checked;
      if (m.rho < 3 * t) E.violations.push_back({t, "rho=" + std::to_string(m.rho) + " < " + std::to_string(3 * t)});
    } else {
      ++E.vacuous;
    }
    ++F.checked;
    for (int d = 0; d < 4; ++d) {
      const auto slack = m.phi_q[d] - (1 + 4 * m.c[d] - 4 * m.fstar_dir[d]);
      if (slack < F.min_slack_q) F.min_slack_q = slack;
      if (slack < 0) F.violations.push_back({t, dir_name(d) + ": slack " + fmt_q(slack)});
    }
  }
  report.checks = {A, B, C, D, E, F};
  report.ever_controlled = trace.status == RunStatus::Controlled;
  return report;
}

std::string report_json(const MonitorReport& report) {
  using nlohmann::json;
  json rounds = json::array();
  for (const auto& m : report.rounds) {
    json phi = json::array(), rho = json::array();
    for (int d = 0; d < 4; ++d) {
      phi.push_back(static_cast<double>(m.phi_q[d]) / 4.0);
      rho.push_back(static_cast<double>(m.rho_q[d]) / 4.0);
    }
    rounds.push_back({{"t", m.t},
                      {"c", m.c},
                      {"rho", rho},
                      {"rho_total", m.rho},
                      {"phi", phi},
                      {"phi_total", static_cast<double>(m.phi_total_q) / 4.0},
                      {"a", m.a},
                      {"fstar_dir", m.fstar_dir},
                      {"fstar", m.fstar}});
  }
  json checks = json::array();
  for (const auto& c : report.checks) {
    json v = json::array();
    for (const auto& x : c.violations) v.push_back({{"t", x.t}, {"detail", x.detail}});
    json entry = {{"check", c.name},     {"statement", c.statement}, {"asserted", c.asserted},
                  {"passed", c.passed()}, {"checked", c.checked},     {"vacuous", c.vacuous},
                  {"violations", v}};
    if (c.name == "E") entry["void_from"] = c.void_from < 0 ? json(nullptr) : json(c.void_from);
    if (c.name == "F") entry["min_slack"] = static_cast<double>(c.min_slack_q) / 4.0;
    checks.push_back(entry);
  }
  json out = {{"ok", report.ok()}, {"controlled", report.ever_controlled}, {"checks", checks}, {"rounds", rounds}};
  return out.dump();
}

std::string report_table(const MonitorReport& report) {
  std::ostringstream out;
  out << "check  result  checked  vacuous  violations  statement\n";
  for (const auto& c : report.checks) {
    std::string result = !c.asserted ? "diag" : c.passed() ? "pass" : "FAIL";
    out << c.name << "      " << result << std::string(8 - result.size(), ' ') << c.checked << "\t " << c.vacuous
        << "\t  " << c.violations.size() << "\t      " << c.statement;
    if (c.name == "E" && c.void_from >= 0) out << " [precondition void from t=" << c.void_from << "]";
    if (c.name == "F") out << " [min slack " << fmt_q(c.min_slack_q) << "]";
    out << '\n';
  }
  if (!report.rounds.empty()) {
    const auto& last = report.rounds.back();
    out << "final t=" << last.t << " rho=" << last.rho << " phi=" << fmt_q(last.phi_total_q)
        << " f*=" << last.fstar << " placed=" << last.placed << '\n';
  }
  return out.str();
}

}  // namespace firefight
