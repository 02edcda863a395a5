#include "enosv/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "enosv/error.hpp"

namespace enosv {

std::string to_string(Boundary b) {
  return b == Boundary::kPeriodic ? "periodic" : "transmissive";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::kPeriodic;
  if (s == "transmissive") return Boundary::kTransmissive;
  throw ConfigError("unknown boundary kind '" + s + "'");
}

ConservedState SimulationState::totals() const {
  ConservedState sum;
  const int s = grid.subcells_per_macrocell();
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < s; ++i) sum += grid.subcell_width(m, i) * at(m, i);
  }
  return sum;
}

Solver::Solver(const Grid& grid, const SolverConfig& config)
    : config_(config),
      recovery_(std::vector<double>(grid.reference_edges().begin(),
                                    grid.reference_edges().end()),
                config.continuous, config.jumps) {
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) {
    throw ConfigError("cfl must lie in (0, 1]");
  }
  if (!(config.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
}

std::vector<ConservedState> Solver::rhs(const SimulationState& state) {
  const Grid& grid = state.grid;
  const std::size_t macro = grid.macrocells();
  const int s = grid.subcells_per_macrocell();
  if (s != recovery_.subcells()) {
    throw ConfigError("state grid does not match the solver layout");
  }
  if (state.averages.size() != grid.total_subcells()) {
    throw ConfigError("averages do not match the grid");
  }
  ++stats_.rhs_evaluations;
  if (recovered_.size() != macro * kVariables) recovered_.assign(macro * kVariables, {});

  // traces[(m * (s + 1) + e)] holds the three conserved traces at edge e.
  std::vector<std::array<EdgeTrace, kVariables>> traces(macro * (s + 1));
  std::vector<double> values(s);
  std::vector<EdgeTrace> scratch(s + 1);
  for (std::size_t m = 0; m < macro; ++m) {
    for (int v = 0; v < kVariables; ++v) {
      for (int i = 0; i < s; ++i) values[i] = state.at(m, i)[v];
      RecoveredFunction& slot = recovered_[m * kVariables + v];
      const RecoveredFunction* warm =
          config_.warm_start && slot.coefficients.size() > 0 ? &slot : nullptr;
      RecoveredFunction fn = recovery_.recover(values, warm, m);
      recovery_.traces(fn, scratch);

      ++stats_.recoveries;
      stats_.qp_iterations += fn.qp_iterations;
      for (int j = 0; j < fn.spec.jumps(); ++j) {
        if (fn.jump_coefficient(j) > 0.0) ++stats_.recovered_jumps;
      }
      stats_.sign_violations += count_sign_violations(fn, scratch, values);

      for (int e = 0; e <= s; ++e) traces[m * (s + 1) + e][v] = scratch[e];
      slot = std::move(fn);
    }
  }

  auto left_limit = [&](std::size_t m, int e) {
    const auto& t = traces[m * (s + 1) + e];
    return ConservedState{t[0].left, t[1].left, t[2].left};
  };
  auto right_limit = [&](std::size_t m, int e) {
    const auto& t = traces[m * (s + 1) + e];
    return ConservedState{t[0].right, t[1].right, t[2].right};
  };

  const bool periodic = config_.boundary == Boundary::kPeriodic;
  // Ghost macrocells outside a transmissive boundary hold the adjacent
  // subcell average; their recovery is that constant.
  const ConservedState ghost_left =
      periodic ? left_limit(macro - 1, s) : state.at(0, 0);
  const ConservedState ghost_right =
      periodic ? right_limit(0, 0) : state.at(macro - 1, s - 1);

  const std::size_t edges = macro * s + 1;
  std::vector<Flux> flux(edges);
  for (std::size_t m = 0; m < macro; ++m) {
    for (int e = 0; e < s; ++e) {
      ConservedState ul;
      ConservedState ur = right_limit(m, e);
      if (e > 0) {
        ul = left_limit(m, e);
      } else {
        ul = m > 0 ? left_limit(m - 1, s) : ghost_left;
      }
      try {
        flux[m * s + e] = hll_flux(ul, ur, config_.gamma);
      } catch (const NonPhysicalState& err) {
        throw NonPhysicalState("macrocell " + std::to_string(m) + ", subcell edge " +
                               std::to_string(e) + ", t=" + std::to_string(state.time) +
                               ": " + err.what());
      }
    }
  }
  if (periodic) {
    flux[edges - 1] = flux[0];
  } else {
    try {
      flux[edges - 1] = hll_flux(left_limit(macro - 1, s), ghost_right, config_.gamma);
    } catch (const NonPhysicalState& err) {
      throw NonPhysicalState("right domain boundary, t=" + std::to_string(state.time) +
                             ": " + err.what());
    }
  }

  std::vector<ConservedState> dudt(state.averages.size());
  for (std::size_t m = 0; m < macro; ++m) {
    for (int i = 0; i < s; ++i) {
      const std::size_t g = m * s + i;
      dudt[g] = (1.0 / grid.subcell_width(m, i)) * (flux[g] - flux[g + 1]);
    }
  }
  return dudt;
}

double Solver::compute_dt(const SimulationState& state) const {
  const Grid& grid = state.grid;
  double c_max = 0.0;
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < grid.subcells_per_macrocell(); ++i) {
      try {
        c_max = std::max(c_max, max_signal_speed(state.at(m, i), config_.gamma));
      } catch (const NonPhysicalState& err) {
        throw NonPhysicalState("macrocell " + std::to_string(m) + ", subcell " +
                               std::to_string(i) + ": " + err.what());
      }
    }
  }
  return config_.cfl * grid.min_subcell_width() / c_max;
}

SimulationState Solver::step(const SimulationState& state, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  SimulationState next = state;
  auto l = [&](const std::vector<ConservedState>& u) {
    next.averages = u;
    return rhs(next);
  };
  next.averages = ssprk33_update(state.averages, dt, l);
  next.time = state.time + dt;
  ++stats_.steps;
  stats_.min_dt = std::min(stats_.min_dt, dt);
  return next;
}

SimulationState Solver::run(SimulationState state, double t_end,
                            double snapshot_interval, const Observer& on_snapshot) {
  if (t_end < state.time) throw ConfigError("t_end lies before the current time");
  double next_snapshot = std::numeric_limits<double>::infinity();
  if (snapshot_interval > 0.0) {
    next_snapshot = (std::floor(state.time / snapshot_interval) + 1.0) * snapshot_interval;
  }
  while (state.time < t_end) {
    const double target = std::min(t_end, next_snapshot);
    double dt = compute_dt(state);
    bool lands = false;
    // Absorb a remainder that would be a sliver of a step.
    if (state.time + dt * (1.0 + 1e-10) >= target) {
      dt = target - state.time;
      lands = true;
    }
    try {
      state = step(state, dt);
    } catch (const NonPhysicalState& err) {
      throw NonPhysicalState("step " + std::to_string(stats_.steps + 1) + ": " +
                             err.what());
    }
    if (lands) {
      state.time = target;
      if (target == next_snapshot) {
        if (on_snapshot && target < t_end) on_snapshot(state);
        next_snapshot += snapshot_interval;
      }
    }
  }
  if (on_snapshot) on_snapshot(state);
  return state;
}

std::vector<ConservedState> semidiscrete_rhs(const SimulationState& state) {
  Solver solver(state.grid, state.config);
  return solver.rhs(state);
}

double compute_dt(const SimulationState& state) {
  Solver solver(state.grid, state.config);
  return solver.compute_dt(state);
}

SimulationState ssprk33_step(const SimulationState& state, double dt) {
  Solver solver(state.grid, state.config);
  return solver.step(state, dt);
}

SimulationState run(const SimulationState& state, double t_end) {
  Solver solver(state.grid, state.config);
  return solver.run(state, t_end);
}

}  // namespace enosv
