#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "firefight/engine.hpp"

namespace firefight::cli {

/// Bad flags, specs or config; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct SourceSpec {
  Point center{0, 0};
  std::int64_t radius = 0;
  std::optional<Metric> metric;  // defaults to the topology's own metric
  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct ExperimentConfig {
  std::string command = "run";
  Topology topology = Topology::Strong;
  SourceSpec source;
  std::string budget;  // required except by monitor, which reads the trace header
  std::string strategy = "null";
  std::int64_t horizon = 1000;
  std::optional<std::uint64_t> seed;
  std::string trace_path;   // run: output, monitor/render: input
  std::string report_path;  // monitor/search/sweep JSON output
  std::string output_path;  // render output

  // search
  std::string objective = "exhaustive";  // or "min-burnt"
  std::optional<int> candidate_distance = 2;
  bool symmetry = true;
  std::uint64_t node_cap = 100'000'000;
  std::optional<std::int64_t> burnt_limit;
  int threads = 1;

  // sweep
  std::vector<std::int64_t> sweep_m;
  std::vector<std::int64_t> sweep_r;
  std::vector<std::string> sweep_budgets{"auto"};

  // render
  std::optional<std::int64_t> render_round;
  std::optional<Box> window;
  std::string format = "text";  // or "pgm"
  int scale = 1;

  // reduce: Cartesian source radius as a multiple of the strong radius
  std::vector<std::int64_t> reduce_radius_factors{2, 1};

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::vector<Point> source_points(const ExperimentConfig& cfg);
Budget parse_budget(const std::string& spec);

/// null | greedy | random:seed=N | replay:file=PATH | contain[:m=M,r=R[,t0=T]]
std::unique_ptr<Strategy> make_strategy(const ExperimentConfig& cfg, const std::string& spec);

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_monitor(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reduce(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_search(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_render(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and maps exceptions to exit codes.
int dispatch(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace firefight::cli
