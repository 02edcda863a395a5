#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "enosv/cases.hpp"
#include "enosv/error.hpp"
#include "enosv/io.hpp"

namespace enosv::cli {

namespace fs = std::filesystem;

namespace {

fs::path output_dir(const RunConfig& config) {
  fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::vector<ProfileRow> profile_rows(const SimulationState& state) {
  const Grid& grid = state.grid;
  std::vector<ProfileRow> rows;
  rows.reserve(grid.total_subcells());
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < grid.subcells_per_macrocell(); ++i) {
      rows.push_back({grid.subcell_left(m, i), grid.subcell_right(m, i), state.at(m, i)});
    }
  }
  return rows;
}

}  // namespace

RecoverResult cmd_recover(const RunConfig& config, bool write_files) {
  validate(config, Command::kRecover);
  const StaticCase sc = static_case(config.case_name);

  RecoverResult r;
  r.case_name = sc.name;
  r.edges = chebyshev_boundaries(config.subcells - 1);
  for (int i = 0; i < config.subcells; ++i) {
    r.averages.push_back(sc.average(r.edges[i], r.edges[i + 1]));
  }
  const Recovery recovery(r.edges, config.continuous, config.jumps);
  r.function = recovery.recover(r.averages);
  r.traces = recovery.traces(r.function);

  std::vector<int> jump_edges = r.function.spec.jump_edges;
  std::sort(jump_edges.begin(), jump_edges.end());
  std::size_t next_jump = 0;
  for (int i = 0; i < kRecoverSamples; ++i) {
    const double x = -1.0 + 2.0 * i / (kRecoverSamples - 1);
    while (next_jump < jump_edges.size() && r.edges[jump_edges[next_jump]] <= x) {
      const int e = jump_edges[next_jump++];
      r.samples.push_back({r.edges[e], r.traces[e].left});
      r.samples.push_back({r.edges[e], r.traces[e].right});
    }
    r.samples.push_back({x, r.function.evaluate(x, r.edges, Side::kPoint)});
  }

  if (!write_files) return r;
  const fs::path dir = output_dir(config);
  {
    std::ofstream out = open_output(dir / "recover_samples.csv");
    out << "x,value\n";
    for (const auto& s : r.samples) {
      out << format_double(s.x) << ',' << format_double(s.value) << '\n';
    }
  }
  {
    std::ofstream out = open_output(dir / "recover_traces.csv");
    out << "edge,x,left,right\n";
    for (std::size_t e = 0; e < r.traces.size(); ++e) {
      out << e << ',' << format_double(r.edges[e]) << ',' << format_double(r.traces[e].left)
          << ',' << format_double(r.traces[e].right) << '\n';
    }
  }
  {
    std::ofstream out = open_output(dir / "recover_jumps.csv");
    out << "jump,edge,x,sign,coefficient,trace_jump,average_jump\n";
    const auto& spec = r.function.spec;
    for (int j = 0; j < spec.jumps(); ++j) {
      const int e = spec.jump_edges[j];
      out << j << ',' << e << ',' << format_double(r.edges[e]) << ',' << spec.jump_signs[j]
          << ',' << format_double(r.function.jump_coefficient(j)) << ','
          << format_double(r.traces[e].right - r.traces[e].left) << ','
          << format_double(r.averages[e] - r.averages[e - 1]) << '\n';
    }
  }
  {
    nlohmann::json meta;
    meta["command"] = "recover";
    meta["config"] = config;
    meta["coefficients"] = std::vector<double>(r.function.coefficients.begin(),
                                               r.function.coefficients.end());
    meta["qp_iterations"] = r.function.qp_iterations;
    std::ofstream out = open_output(dir / "recover.json");
    out << meta.dump(2) << '\n';
  }
  return r;
}

SolveResult cmd_solve(const RunConfig& config, bool write_files) {
  validate(config, Command::kSolve);
  const TestCase tc = make_case(config.case_name, config.gamma);
  const Grid grid = Grid::uniform(tc.lo, tc.hi, config.macrocells, config.subcells);
  SolverConfig sc;
  sc.continuous = config.continuous;
  sc.jumps = config.jumps;
  sc.cfl = config.cfl;
  sc.gamma = config.gamma;
  const SimulationState initial = initial_state(tc, grid, sc);
  const double t_end = config.t_end.value_or(tc.t_end);

  std::vector<std::string> files;
  fs::path dir;
  if (write_files) dir = output_dir(config);
  int snapshot = 0;
  auto write_snapshot = [&](const SimulationState& s, const std::string& stem) {
    const fs::path path = dir / (stem + ".csv");
    write_profile_csv(path.string(), profile_rows(s), config.gamma);
    files.push_back(path.filename().string());
  };
  Solver::Observer observer;
  if (write_files && config.snapshot_interval > 0.0) {
    write_snapshot(initial, tc.name + "_snapshot_" + std::to_string(snapshot++));
    observer = [&](const SimulationState& s) {
      if (s.time < t_end) {
        write_snapshot(s, tc.name + "_snapshot_" + std::to_string(snapshot++));
      }
    };
  }

  Solver solver(grid, initial.config);
  const auto start = std::chrono::steady_clock::now();
  std::optional<SimulationState> final_state;
  try {
    final_state = solver.run(initial, t_end, config.snapshot_interval, observer);
  } catch (const NumericalError& err) {
    if (write_files) {
      nlohmann::json diag;
      diag["command"] = "solve";
      diag["config"] = config;
      diag["error"] = err.what();
      diag["steps"] = solver.stats().steps;
      std::ofstream out = open_output(dir / (tc.name + "_error.json"));
      out << diag.dump(2) << '\n';
    }
    throw;
  }
  SolveResult result{std::move(*final_state), solver.stats(),
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count(),
                     {}};

  if (write_files) {
    write_snapshot(result.final_state, tc.name + "_final");
    nlohmann::json meta;
    meta["command"] = "solve";
    meta["config"] = config;
    meta["final_time"] = result.final_state.time;
    meta["steps"] = result.stats.steps;
    meta["min_dt"] = result.stats.min_dt;
    meta["wall_seconds"] = result.wall_seconds;
    meta["recoveries"] = result.stats.recoveries;
    meta["recovered_jumps"] = result.stats.recovered_jumps;
    meta["sign_violations"] = result.stats.sign_violations;
    meta["files"] = files;
    std::ofstream out = open_output(dir / (tc.name + "_run.json"));
    out << meta.dump(2) << '\n';
  }
  result.files = std::move(files);
  return result;
}

double pairwise_order(int n0, double e0, int n1, double e1) {
  return -std::log(e1 / e0) / std::log(static_cast<double>(n1) / n0);
}

std::optional<double> least_squares_order(std::span<const int> macrocells,
                                          std::span<const double> errors) {
  const std::size_t n = macrocells.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(static_cast<double>(macrocells[i]));
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(static_cast<double>(macrocells[i])) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

ConvergenceTable cmd_converge(const RunConfig& config, bool write_files) {
  RunConfig base = config;
  if (base.grids.empty()) base.grids = default_convergence_grids();
  validate(base, Command::kConverge);
  const TestCase tc = case_advection();
  const double t_end = base.t_end.value_or(tc.t_end);

  ConvergenceTable table;
  std::vector<int> ns;
  std::vector<double> l1s;
  for (int n : base.grids) {
    const Grid grid = Grid::uniform(tc.lo, tc.hi, n, base.subcells);
    SolverConfig sc;
    sc.continuous = base.continuous;
    sc.jumps = base.jumps;
    sc.cfl = base.cfl;
    sc.gamma = base.gamma;
    Solver solver(grid, initial_state(tc, grid, sc).config);
    const SimulationState final_state = solver.run(initial_state(tc, grid, sc), t_end);
    const auto exact = exact_subcell_averages(tc, grid, t_end, base.gamma);
    const ErrorNorms norms = error_norms(grid, final_state.averages, exact);

    ConvergenceRow row{n, norms.l1.rho, norms.linf.rho, std::nullopt};
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      row.pairwise_slope = pairwise_order(prev.macrocells, prev.l1, n, row.l1);
    }
    table.rows.push_back(row);
    ns.push_back(n);
    l1s.push_back(row.l1);
  }
  table.least_squares_slope = least_squares_order(ns, l1s);

  if (write_files) {
    const fs::path dir = output_dir(base);
    std::ofstream csv = open_output(dir / "convergence.csv");
    csv << "macrocells,l1,linf,pairwise_slope\n";
    for (const auto& r : table.rows) {
      csv << r.macrocells << ',' << format_double(r.l1) << ',' << format_double(r.linf) << ','
          << (r.pairwise_slope ? format_double(*r.pairwise_slope) : std::string()) << '\n';
    }
    nlohmann::json meta;
    meta["command"] = "converge";
    meta["config"] = base;
    meta["least_squares_slope"] = table.least_squares_slope
                                      ? nlohmann::json(*table.least_squares_slope)
                                      : nlohmann::json(nullptr);
    std::ofstream js = open_output(dir / "convergence.json");
    js << meta.dump(2) << '\n';
  }
  return table;
}

}  // namespace enosv::cli
