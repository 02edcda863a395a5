#ifndef ENOSV_TOOLS_COMMANDS_HPP_
#define ENOSV_TOOLS_COMMANDS_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "enosv/recovery.hpp"
#include "enosv/solver.hpp"
#include "run_config.hpp"

namespace enosv::cli {

struct SamplePoint {
  double x = 0.0;
  double value = 0.0;
};

struct RecoverResult {
  std::string case_name;
  std::vector<double> edges;  // [-1, 1] subcell layout
  std::vector<double> averages;
  RecoveredFunction function;
  std::vector<EdgeTrace> traces;
  /// 512 equispaced samples plus a left/right pair at every jump edge.
  std::vector<SamplePoint> samples;
};

inline constexpr int kRecoverSamples = 512;

/// Recovers a static case on the single macrocell [-1, 1]. Writes
/// recover_samples.csv, recover_traces.csv, recover_jumps.csv and
/// recover.json into config.out when write_files is set.
RecoverResult cmd_recover(const RunConfig& config, bool write_files = true);

struct SolveResult {
  SimulationState final_state;
  SolverStats stats;
  double wall_seconds = 0.0;
  std::vector<std::string> files;
};

/// Runs an Euler case to its final time (or config.t_end). Writes
/// <case>_final.csv, optional <case>_snapshot_<k>.csv and <case>_run.json.
SolveResult cmd_solve(const RunConfig& config, bool write_files = true);

struct ConvergenceRow {
  int macrocells = 0;
  double l1 = 0.0;
  double linf = 0.0;
  std::optional<double> pairwise_slope;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::optional<double> least_squares_slope;
};

/// Observed order p from err ~ N^-p for consecutive or all grids.
double pairwise_order(int n0, double e0, int n1, double e1);
std::optional<double> least_squares_order(std::span<const int> macrocells,
                                          std::span<const double> errors);

/// Density errors of the advection case on every grid in config.grids
/// (default: 16..52). Writes convergence.csv and convergence.json.
ConvergenceTable cmd_converge(const RunConfig& config, bool write_files = true);

}  // namespace enosv::cli

#endif  // ENOSV_TOOLS_COMMANDS_HPP_
