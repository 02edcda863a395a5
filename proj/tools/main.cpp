#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "enosv/error.hpp"
#include "run_config.hpp"

namespace {

using enosv::cli::Command;
using enosv::cli::RunConfig;

void add_common_flags(CLI::App* sub, RunConfig& config, std::string& preset) {
  sub->add_option("--preset", preset, "Figure preset (fig2 .. fig13)");
  sub->add_option("--case", config.case_name, "Case name");
  sub->add_option("--macrocells", config.macrocells, "Number of macrocells");
  sub->add_option("--subcells", config.subcells, "Subcells per macrocell");
  sub->add_option("--k", config.continuous, "Continuous basis functions");
  sub->add_option("--jumps", config.jumps, "Jump basis functions");
  sub->add_option("--cfl", config.cfl, "CFL number");
  sub->add_option("--gamma", config.gamma, "Ratio of specific heats");
  sub->add_option("--t-end", config.t_end, "Final time override");
  sub->add_option("--out", config.out, "Output directory");
  sub->add_option("--snapshot-interval", config.snapshot_interval,
                  "Write a profile every this much simulated time");
}

// Preset values form the base; flags given explicitly on the command line win.
RunConfig resolve(CLI::App* sub, const RunConfig& flags, const std::string& preset,
                  Command command) {
  if (preset.empty()) return flags;
  const auto& p = enosv::cli::find_preset(preset);
  if (p.command != command) {
    throw enosv::ConfigError("preset " + preset + " belongs to the " +
                             enosv::cli::to_string(p.command) + " command");
  }
  RunConfig c = p.config;
  auto given = [&](const char* name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--case")) c.case_name = flags.case_name;
  if (given("--macrocells")) c.macrocells = flags.macrocells;
  if (given("--subcells")) c.subcells = flags.subcells;
  if (given("--k")) c.continuous = flags.continuous;
  if (given("--jumps")) c.jumps = flags.jumps;
  if (given("--cfl")) c.cfl = flags.cfl;
  if (given("--gamma")) c.gamma = flags.gamma;
  if (given("--t-end")) c.t_end = flags.t_end;
  if (given("--snapshot-interval")) c.snapshot_interval = flags.snapshot_interval;
  if (given("--grids")) c.grids = flags.grids;
  c.out = flags.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ENO spectral volume solver for the 1D Euler equations"};
  app.require_subcommand(1);

  RunConfig recover_flags;
  recover_flags.case_name = "static-u1";
  recover_flags.macrocells = 1;
  recover_flags.subcells = 10;
  recover_flags.continuous = 8;
  recover_flags.jumps = 2;
  RunConfig solve_flags;
  RunConfig converge_flags;
  converge_flags.case_name = "advection";
  std::string recover_preset;
  std::string solve_preset;
  std::string converge_preset;

  auto* recover = app.add_subcommand("recover", "Recover a static profile on [-1, 1]");
  add_common_flags(recover, recover_flags, recover_preset);
  auto* solve = app.add_subcommand("solve", "Run an Euler test case");
  add_common_flags(solve, solve_flags, solve_preset);
  auto* converge = app.add_subcommand("converge", "Advection convergence study");
  add_common_flags(converge, converge_flags, converge_preset);
  converge->add_option("--grids", converge_flags.grids, "Macrocell counts")->delimiter(',');

  auto* list = app.add_subcommand("presets", "List the figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& p : enosv::cli::presets()) {
        std::printf("%-6s %-9s %s\n", p.name.c_str(), enosv::cli::to_string(p.command).c_str(),
                    p.description.c_str());
      }
    } else if (*recover) {
      const RunConfig c = resolve(recover, recover_flags, recover_preset, Command::kRecover);
      const auto r = enosv::cli::cmd_recover(c);
      std::printf("%s: %d jumps, %d QP iterations -> %s\n", r.case_name.c_str(),
                  r.function.spec.jumps(), r.function.qp_iterations, c.out.c_str());
    } else if (*solve) {
      const RunConfig c = resolve(solve, solve_flags, solve_preset, Command::kSolve);
      const auto r = enosv::cli::cmd_solve(c);
      std::printf("%s: t=%.6g after %zu steps (%.2f s) -> %s\n", c.case_name.c_str(),
                  r.final_state.time, static_cast<std::size_t>(r.stats.steps), r.wall_seconds,
                  c.out.c_str());
    } else if (*converge) {
      const RunConfig c = resolve(converge, converge_flags, converge_preset, Command::kConverge);
      const auto table = enosv::cli::cmd_converge(c);
      std::printf("%10s %24s %24s %10s\n", "N", "L1", "Linf", "slope");
      for (const auto& row : table.rows) {
        std::printf("%10d %24.17g %24.17g ", row.macrocells, row.l1, row.linf);
        if (row.pairwise_slope) {
          std::printf("%10.4f\n", *row.pairwise_slope);
        } else {
          std::printf("%10s\n", "");
        }
      }
      if (table.least_squares_slope) {
        std::printf("least-squares slope %.4f\n", *table.least_squares_slope);
      }
    }
  } catch (const enosv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const enosv::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
