#include "firefight/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "firefight/trace.hpp"

namespace firefight {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr std::size_t kMemoLimit = 20'000'000;

// The eight symmetries of the square: (x, y) -> (a x + b y, c x + d y).
struct Sym {
  int a, b, c, d;
  Point apply(Point p) const {
    return {static_cast<Coord>(a * p.x + b * p.y), static_cast<Coord>(c * p.x + d * p.y)};
  }
};
constexpr std::array<Sym, 8> kSquare{{{1, 0, 0, 1},
                                      {0, -1, 1, 0},
                                      {-1, 0, 0, -1},
                                      {0, 1, -1, 0},
                                      {-1, 0, 0, 1},
                                      {1, 0, 0, -1},
                                      {0, 1, 1, 0},
                                      {0, -1, -1, 0}}};

std::vector<Sym> stabilizer(Topology topo, const std::vector<Point>& source, bool enabled) {
  std::vector<Sym> out{kSquare[0]};
  if (!enabled) return out;
  const auto offs = neighbor_offsets(topo);
  PointSet src(source.begin(), source.end());
  for (std::size_t g = 1; g < kSquare.size(); ++g) {
    const Sym s = kSquare[g];
    bool ok = true;
    for (auto o : offs) {
      Point q = s.apply({o.dx, o.dy});
      ok = ok && std::any_of(offs.begin(), offs.end(), [&](Offset w) { return w.dx == q.x && w.dy == q.y; });
    }
    for (auto p : source) ok = ok && src.contains(s.apply(p));
    if (ok) out.push_back(s);
  }
  return out;
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t pack(Point p) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) | static_cast<std::uint32_t>(p.y);
}

struct Key {
  std::uint64_t lo = 0, hi = 0;
  friend bool operator==(const Key&, const Key&) = default;
  friend auto operator<=>(const Key& x, const Key& y) {
    if (x.hi != y.hi) return x.hi <=> y.hi;
    return x.lo <=> y.lo;
  }
};
struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept { return static_cast<std::size_t>(k.lo ^ (k.hi * 31)); }
};

enum : std::uint8_t { kVacant = 0, kBurnt = 1, kProtected = 2 };

// Fire process on a finite window with undo. The state key is the least,
// over the stabilizer, of an order-independent 128-bit hash of the mapped
// (burnt, protected) sets; sums are maintained incrementally.
class Board {
 public:
  explicit Board(const SearchConfig& cfg) : topo_(cfg.topology), syms_(stabilizer(cfg.topology, cfg.source, cfg.symmetry)) {
    std::int64_t extent = 0;
    for (auto p : cfg.source) {
      extent = std::max<std::int64_t>({extent, std::llabs(p.x), std::llabs(p.y)});
    }
    const std::int64_t reach =
        cfg.candidate_distance ? cfg.horizon * (*cfg.candidate_distance + 1) + 3 : cfg.horizon + 4;
    const std::int64_t w = extent + reach;
    if (w > 20000) throw std::invalid_argument("search window too large");
    w_ = static_cast<Coord>(w);
    side_ = 2 * w_ + 1;
    cell_.assign(static_cast<std::size_t>(side_) * side_, kVacant);
    mark_.assign(cell_.size(), 0);
    h_.assign(syms_.size(), {});
    for (auto p : cfg.source) {
      if (cell_[idx(p)] == kBurnt) continue;
      set(p, kBurnt);
      burnt_.push_back(p);
    }
    std::sort(burnt_.begin(), burnt_.end());
    frontier_ = burnt_;
    offs_.assign(neighbor_offsets(topo_).begin(), neighbor_offsets(topo_).end());
  }

  std::size_t idx(Point p) const {
    if (p.x <= -w_ || p.x >= w_ || p.y <= -w_ || p.y >= w_) throw std::logic_error("search left its window");
    return static_cast<std::size_t>(p.y + w_) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(p.x + w_);
  }
  std::uint8_t at(Point p) const { return cell_[idx(p)]; }
  bool vacant(Point p) const { return at(p) == kVacant; }

  const std::vector<Point>& burnt() const { return burnt_; }
  const std::vector<Point>& protected_points() const { return prot_; }

  void place(const std::vector<Point>& pts) {
    for (auto p : pts) {
      set(p, kProtected);
      prot_.push_back(p);
    }
  }
  void unplace(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      unset(prot_.back(), kProtected);
      prot_.pop_back();
    }
  }

  /// Returns the previous frontier for undo.
  std::vector<Point> spread() {
    auto ignited = endangered();
    for (auto p : ignited) {
      set(p, kBurnt);
      burnt_.push_back(p);
    }
    std::vector<Point> old = std::move(frontier_);
    frontier_ = std::move(ignited);
    return old;
  }
  void unspread(std::vector<Point> old) {
    for (std::size_t i = 0; i < frontier_.size(); ++i) {
      unset(burnt_.back(), kBurnt);
      burnt_.pop_back();
    }
    frontier_ = std::move(old);
  }

  std::vector<Point> endangered() {
    ++gen_;
    std::vector<Point> out;
    for (auto p : frontier_) {
      for (auto o : offs_) {
        Point q{p.x + o.dx, p.y + o.dy};
        const auto i = idx(q);
        if (cell_[i] == kVacant && mark_[i] != gen_) {
          mark_[i] = gen_;
          out.push_back(q);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Vacant points within l_inf distance d of burnt or protected points.
  std::vector<Point> near(int d) {
    ++gen_;
    std::vector<Point> out;
    auto visit = [&](Point p) {
      for (int dy = -d; dy <= d; ++dy) {
        for (int dx = -d; dx <= d; ++dx) {
          Point q{p.x + dx, p.y + dy};
          const auto i = idx(q);
          if (cell_[i] == kVacant && mark_[i] != gen_) {
            mark_[i] = gen_;
            out.push_back(q);
          }
        }
      }
    };
    for (auto p : burnt_) visit(p);
    for (auto p : prot_) visit(p);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Endangered points and their vacant neighbors.
  std::vector<Point> endangered_closure(const std::vector<Point>& e) {
    ++gen_;
    std::vector<Point> out;
    auto add = [&](Point q) {
      const auto i = idx(q);
      if (cell_[i] == kVacant && mark_[i] != gen_) {
        mark_[i] = gen_;
        out.push_back(q);
      }
    };
    for (auto p : e) {
      add(p);
      for (auto o : offs_) add({p.x + o.dx, p.y + o.dy});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Key key() const {
    Key best = h_[0];
    for (std::size_t g = 1; g < h_.size(); ++g) best = std::min(best, h_[g]);
    return best;
  }

  std::int64_t rho() const {
    std::int64_t total = 0;
    std::vector<std::int64_t> vals;
    vals.reserve(burnt_.size());
    for (auto [i, j] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
      vals.clear();
      for (auto p : burnt_) vals.push_back(i * std::int64_t{p.x} + j * std::int64_t{p.y});
      std::sort(vals.begin(), vals.end());
      std::int64_t c = 0;
      for (auto v : vals) {
        if (v == c) ++c;
      }
      total += c;
    }
    return total;
  }

 private:
  void set(Point p, std::uint8_t kind) {
    cell_[idx(p)] = kind;
    hash(p, kind, +1);
  }
  void unset(Point p, std::uint8_t kind) {
    cell_[idx(p)] = kVacant;
    hash(p, kind, -1);
  }
  void hash(Point p, std::uint8_t kind, int sign) {
    for (std::size_t g = 0; g < syms_.size(); ++g) {
      const std::uint64_t v = pack(syms_[g].apply(p)) ^ (kind == kBurnt ? 0x5bd1e995ULL : 0xc2b2ae3d27d4eb4fULL);
      const std::uint64_t lo = mix64(v);
      const std::uint64_t hi = mix64(v ^ 0xa0761d6478bd642fULL);
      if (sign > 0) {
        h_[g].lo += lo;
        h_[g].hi += hi;
      } else {
        h_[g].lo -= lo;
        h_[g].hi -= hi;
      }
    }
  }

  Topology topo_;
  std::vector<Sym> syms_;
  Coord w_ = 0;
  Coord side_ = 0;
  std::vector<std::uint8_t> cell_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t gen_ = 0;
  std::vector<Key> h_;
  std::vector<Point> burnt_, prot_, frontier_;
  std::vector<Offset> offs_;
};

// Calls fn(combo) for every s-subset of cand in lexicographic index order;
// fn returns false to stop.
template <typename Fn>
bool for_each_combo(const std::vector<Point>& cand, std::size_t s, Fn&& fn) {
  const std::size_t n = cand.size();
  if (s > n) return true;
  std::vector<std::size_t> ix(s);
  for (std::size_t i = 0; i < s; ++i) ix[i] = i;
  std::vector<Point> combo(s);
  while (true) {
    for (std::size_t i = 0; i < s; ++i) combo[i] = cand[ix[i]];
    if (!fn(combo)) return false;
    std::size_t i = s;
    while (i > 0 && ix[i - 1] == n - s + i - 1) --i;
    if (i == 0) return true;
    ++ix[i - 1];
    for (std::size_t k = i; k < s; ++k) ix[k] = ix[k - 1] + 1;
  }
}

std::string rule_text(const SearchConfig& cfg) {
  if (!cfg.candidate_distance) return "unrestricted (all vacant points within horizon+1 of the source)";
  return "vacant points within l_inf distance " + std::to_string(*cfg.candidate_distance) +
         " of burnt or protected points";
}

void validate(const SearchConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("search horizon must be at least 1");
  if (cfg.candidate_distance && *cfg.candidate_distance < 1) throw std::invalid_argument("candidate distance must be >= 1");
  if (cfg.node_cap == 0) throw std::invalid_argument("node cap must be positive");
}

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::atomic<std::size_t> found_root{std::numeric_limits<std::size_t>::max()};
};

class Searcher {
 public:
  Searcher(const SearchConfig& cfg, Shared& shared) : cfg_(cfg), shared_(shared), board_(cfg) {
    f_.resize(static_cast<std::size_t>(cfg.horizon) + 1, 0);
    for (std::int64_t t = 1; t <= cfg.horizon; ++t) f_[static_cast<std::size_t>(t)] = cfg.budget.at(t);
    if (cfg.candidate_distance) return;
    PointSet seen;
    const int reach = static_cast<int>(cfg.horizon) + 1;
    for (auto p : cfg.source) {
      for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) seen.insert({p.x + dx, p.y + dy});
      }
    }
    unrestricted_ = sorted(seen);
  }

  Board& board() { return board_; }
  std::vector<std::vector<Point>>& path() { return path_; }

  bool tick() {
    if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > cfg_.node_cap) {
      shared_.aborted = true;
    }
    return !shared_.aborted;
  }

  std::vector<Point> candidates() {
    if (cfg_.candidate_distance) return board_.near(*cfg_.candidate_distance);
    std::vector<Point> out;
    for (auto p : unrestricted_) {
      if (board_.vacant(p)) out.push_back(p);
    }
    return out;
  }

  std::vector<Point> last_round_candidates(const std::vector<Point>& e) {
    auto closure = board_.endangered_closure(e);
    if (!cfg_.candidate_distance) {
      PointSet allowed(unrestricted_.begin(), unrestricted_.end());
      std::erase_if(closure, [&](Point p) { return !allowed.contains(p); });
      return closure;
    }
    auto rule = candidates();
    std::vector<Point> out;
    std::set_intersection(closure.begin(), closure.end(), rule.begin(), rule.end(), std::back_inserter(out));
    return out;
  }

  // ---- exhaustive ----------------------------------------------------

  /// Least rho(T) in the subtree; sets found_ on control.
  std::int64_t explore(std::int64_t k) {
    if (!tick()) return kInf;
    auto e = board_.endangered();
    if (e.empty()) {
      found(k);
      return kInf;
    }
    const Key key = board_.key();
    auto& memo = memo_[static_cast<std::size_t>(k)];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto f = static_cast<std::size_t>(f_[static_cast<std::size_t>(k + 1)]);
    std::int64_t best = kInf;
    if (k == cfg_.horizon - 1) {
      best = cfg_.topology == Topology::Cartesian ? board_.rho() : 0;
      auto cand = last_round_candidates(e);
      for_each_combo(cand, std::min(f, cand.size()), [&](const std::vector<Point>& combo) {
        if (!tick()) return false;
        board_.place(combo);
        auto old = board_.spread();
        const bool controlled = board_.endangered().empty();
        board_.unspread(std::move(old));
        board_.unplace(combo.size());
        if (cfg_.leaf_observer) {
          path_.push_back(combo);
          cfg_.leaf_observer(path_);
          path_.pop_back();
        }
        if (controlled) {
          path_.push_back(combo);
          found(k + 1);
          return false;
        }
        return true;
      });
    } else {
      auto cand = candidates();
      for (std::size_t s = std::min(f, cand.size()) + 1; s-- > 0 && !done();) {
        for_each_combo(cand, s, [&](const std::vector<Point>& combo) {
          board_.place(combo);
          auto old = board_.spread();
          path_.push_back(combo);
          best = std::min(best, explore(k + 1));
          if (done()) return false;
          path_.pop_back();
          board_.unspread(std::move(old));
          board_.unplace(combo.size());
          return true;
        });
      }
    }
    if (!done() && memo.size() < kMemoLimit) memo.emplace(key, best);
    return best;
  }

  void init_memo() { memo_.assign(static_cast<std::size_t>(cfg_.horizon) + 1, {}); }

  bool done() const { return found_ || shared_.aborted; }
  bool has_found() const { return found_; }
  std::int64_t found_round() const { return found_round_; }
  const std::vector<std::vector<Point>>& witness() const { return witness_; }
  std::int64_t witness_burnt() const { return witness_burnt_; }

  // ---- branch and bound ----------------------------------------------

  void bound(std::int64_t k) {
    if (!tick()) return;
    auto e = board_.endangered();
    const auto burnt = static_cast<std::int64_t>(board_.burnt().size());
    if (e.empty()) {
      if (burnt < best_burnt_) {
        best_burnt_ = burnt;
        witness_ = path_;
        found_round_ = k;
        witness_burnt_ = burnt;
        found_ = true;
      }
      return;
    }
    if (k == cfg_.horizon) return;
    const auto f = f_[static_cast<std::size_t>(k + 1)];
    if (burnt + std::max<std::int64_t>(0, static_cast<std::int64_t>(e.size()) - f) >= best_burnt_) return;
    auto& seen = visited_[static_cast<std::size_t>(k)];
    if (seen.size() < kMemoLimit && !seen.insert(board_.key()).second) return;

    const bool last = k == cfg_.horizon - 1;
    std::vector<Point> cand;
    if (last) {
      cand = last_round_candidates(e);
    } else {
      // Endangered points first, then the rest of the candidates.
      auto all = candidates();
      cand = e;
      std::vector<Point> rest;
      std::set_difference(all.begin(), all.end(), e.begin(), e.end(), std::back_inserter(rest));
      std::erase_if(cand, [&](Point p) { return !std::binary_search(all.begin(), all.end(), p); });
      cand.insert(cand.end(), rest.begin(), rest.end());
    }
    const std::size_t top = std::min(static_cast<std::size_t>(f), cand.size());
    const std::size_t low = last ? top : 0;
    for (std::size_t s = top + 1; s-- > low && !shared_.aborted;) {
      for_each_combo(cand, s, [&](const std::vector<Point>& combo) {
        board_.place(combo);
        auto old = board_.spread();
        path_.push_back(combo);
        bound(k + 1);
        path_.pop_back();
        board_.unspread(std::move(old));
        board_.unplace(combo.size());
        return !shared_.aborted;
      });
    }
  }

  void init_bound(std::int64_t limit) {
    best_burnt_ = limit;
    visited_.assign(static_cast<std::size_t>(cfg_.horizon) + 1, {});
  }

 private:
  void found(std::int64_t round) {
    found_ = true;
    found_round_ = round;
    witness_ = path_;
    witness_burnt_ = -1;
  }

  const SearchConfig& cfg_;
  Shared& shared_;
  Board board_;
  std::vector<std::int64_t> f_;
  std::vector<Point> unrestricted_;
  std::vector<std::vector<Point>> path_;
  std::vector<std::unordered_map<Key, std::int64_t, KeyHash>> memo_;
  std::vector<std::unordered_set<Key, KeyHash>> visited_;
  bool found_ = false;
  std::int64_t found_round_ = 0;
  std::int64_t witness_burnt_ = -1;
  std::vector<std::vector<Point>> witness_;
  std::int64_t best_burnt_ = kInf;
};

class ScriptStrategy final : public Strategy {
 public:
  explicit ScriptStrategy(const std::vector<std::vector<Point>>& squads) : squads_(squads) {}
  std::string id() const override { return "search-witness"; }
  std::vector<Point> next_placements(const FireState& s, std::int64_t) override {
    const auto k = static_cast<std::size_t>(s.round());
    return k < squads_.size() ? squads_[k] : std::vector<Point>{};
  }

 private:
  const std::vector<std::vector<Point>>& squads_;
};

void finish_witness(const SearchConfig& cfg, SearchResult& result, const std::vector<std::vector<Point>>& squads) {
  result.witness = witness_trace(cfg, squads);
  if (result.witness->status != RunStatus::Controlled) {
    throw std::logic_error("search witness does not replay to a controlled state");
  }
  result.control_round = result.witness->final_round;
  FireState final = replay(*result.witness);
  result.min_burnt = static_cast<std::int64_t>(final.burnt().size());
}

}  // namespace

std::string_view to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::ControlledFound: return "controlled-found";
    case SearchOutcome::ExhaustedNoControl: return "exhausted-no-control";
    case SearchOutcome::NodeCapHit: return "node-cap-hit";
  }
  return "?";
}

RunTrace witness_trace(const SearchConfig& cfg, const std::vector<std::vector<Point>>& squads) {
  FireState initial(cfg.topology, cfg.source);
  ScriptStrategy strat(squads);
  auto trace = run(initial, cfg.budget, strat, std::max<std::int64_t>(1, static_cast<std::int64_t>(squads.size())));
  if (trace.status == RunStatus::StrategyFailed) throw std::invalid_argument(trace.error);
  return trace;
}

SearchResult exhaustive_search(const SearchConfig& cfg) {
  validate(cfg);
  SearchResult result;
  result.candidate_rule = rule_text(cfg);
  result.symmetry = cfg.symmetry;
  Shared shared;

  const int workers = std::max(1, cfg.threads);
  if (workers == 1 || cfg.horizon == 1 || cfg.leaf_observer) {
    Searcher s(cfg, shared);
    s.init_memo();
    const auto best = s.explore(0);
    result.nodes = shared.nodes;
    if (s.has_found()) {
      result.outcome = SearchOutcome::ControlledFound;
      finish_witness(cfg, result, s.witness());
    } else if (shared.aborted) {
      result.outcome = SearchOutcome::NodeCapHit;
      if (best != kInf) result.min_rho = best;
    } else {
      result.outcome = SearchOutcome::ExhaustedNoControl;
      if (cfg.topology == Topology::Cartesian) result.min_rho = best;
    }
    return result;
  }

  // Root-level split: worker w takes first-round squads with index = w mod workers.
  Searcher root(cfg, shared);
  if (root.board().endangered().empty()) {
    result.outcome = SearchOutcome::ControlledFound;
    finish_witness(cfg, result, {});
    result.nodes = 1;
    return result;
  }
  std::vector<std::vector<Point>> squads;
  {
    auto cand = root.candidates();
    const auto f = static_cast<std::size_t>(cfg.budget.at(1));
    for (std::size_t s = std::min(f, cand.size()) + 1; s-- > 0;) {
      for_each_combo(cand, s, [&](const std::vector<Point>& c) {
        squads.push_back(c);
        return true;
      });
    }
  }
  std::vector<std::int64_t> best(static_cast<std::size_t>(workers), kInf);
  std::vector<std::vector<std::vector<Point>>> witness(squads.size());
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      Searcher s(cfg, shared);
      s.init_memo();
      for (std::size_t i = static_cast<std::size_t>(w); i < squads.size(); i += static_cast<std::size_t>(workers)) {
        if (i > shared.found_root || shared.aborted) break;
        s.board().place(squads[i]);
        auto old = s.board().spread();
        s.path() = {squads[i]};
        const auto v = s.explore(1);
        if (s.has_found()) {
          std::lock_guard lock(mu);
          witness[i] = s.witness();
          std::size_t cur = shared.found_root;
          while (i < cur && !shared.found_root.compare_exchange_weak(cur, i)) {
          }
          break;
        }
        best[static_cast<std::size_t>(w)] = std::min(best[static_cast<std::size_t>(w)], v);
        s.board().unspread(std::move(old));
        s.board().unplace(squads[i].size());
      }
    });
  }
  for (auto& t : pool) t.join();
  result.nodes = shared.nodes + 1;
  const std::int64_t merged = *std::min_element(best.begin(), best.end());
  if (shared.found_root != std::numeric_limits<std::size_t>::max()) {
    result.outcome = SearchOutcome::ControlledFound;
    finish_witness(cfg, result, witness[shared.found_root]);
  } else if (shared.aborted) {
    result.outcome = SearchOutcome::NodeCapHit;
    if (merged != kInf) result.min_rho = merged;
  } else {
    result.outcome = SearchOutcome::ExhaustedNoControl;
    if (cfg.topology == Topology::Cartesian) result.min_rho = merged;
  }
  return result;
}

SearchResult min_burnt_search(const SearchConfig& cfg) {
  validate(cfg);
  SearchResult result;
  result.candidate_rule = rule_text(cfg);
  result.symmetry = cfg.symmetry;
  Shared shared;
  Searcher s(cfg, shared);
  s.init_bound(cfg.burnt_limit.value_or(kInf));
  s.bound(0);
  result.nodes = shared.nodes;
  if (s.has_found()) finish_witness(cfg, result, s.witness());
  if (shared.aborted) {
    result.outcome = SearchOutcome::NodeCapHit;
  } else {
    result.outcome = s.has_found() ? SearchOutcome::ControlledFound : SearchOutcome::ExhaustedNoControl;
  }
  return result;
}

}  // namespace firefight
