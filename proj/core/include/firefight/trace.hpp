#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "firefight/engine.hpp"

namespace firefight {

/// A trace that cannot be parsed or does not replay. `line` is 1-based.
class MalformedTrace : public std::runtime_error {
 public:
  MalformedTrace(std::int64_t line, const std::string& what);
  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

// JSON lines: a header {topology, initial_burnt, initial_protected, budget,
// strategy, seed}, one {t, f, placed, ignited} object per round, then a
// {status, round, error} footer.
void write_trace(std::ostream& out, const RunTrace& trace);
std::string trace_to_string(const RunTrace& trace);
RunTrace read_trace(std::istream& in);
RunTrace read_trace_string(const std::string& text);
void save_trace(const std::string& path, const RunTrace& trace);
RunTrace load_trace(const std::string& path);

enum class ReplayStage : std::uint8_t { Placed, Spread };

/// Called with the state right after round t's placements and again right
/// after its spread.
using ReplayObserver = std::function<void(const FireState&, const RoundRecord&, ReplayStage)>;

/// Re-executes the trace from its initial state and checks every record
/// (round numbering, budget, legality, ignitions, footer status). Throws
/// MalformedTrace naming the offending line. Returns the final state.
FireState replay(const RunTrace& trace, const ReplayObserver& observer = {});

/// State after `round` steps; round 0 is the initial state.
FireState state_at(const RunTrace& trace, std::int64_t round);

}  // namespace firefight
