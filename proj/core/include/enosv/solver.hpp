#ifndef ENOSV_SOLVER_HPP_
#define ENOSV_SOLVER_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "enosv/discretization.hpp"
#include "enosv/euler.hpp"
#include "enosv/recovery.hpp"

namespace enosv {

enum class Boundary { kPeriodic, kTransmissive };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

struct SolverConfig {
  int continuous = 3;
  int jumps = 1;
  double cfl = 0.1;
  double gamma = kDefaultGamma;
  Boundary boundary = Boundary::kPeriodic;
  /// Seed each macrocell's active-set solve with its previous coefficients.
  bool warm_start = true;
};

/// Subcell averages of the conserved variables on a grid, macrocell-major.
struct SimulationState {
  Grid grid;
  std::vector<ConservedState> averages;
  double time = 0.0;
  SolverConfig config;

  ConservedState& at(std::size_t m, int i) {
    return averages[m * grid.subcells_per_macrocell() + i];
  }
  const ConservedState& at(std::size_t m, int i) const {
    return averages[m * grid.subcells_per_macrocell() + i];
  }

  /// Volume-weighted sum of each conserved variable.
  ConservedState totals() const;
};

struct SolverStats {
  long steps = 0;
  long rhs_evaluations = 0;
  long recoveries = 0;
  long qp_iterations = 0;
  long recovered_jumps = 0;  // jumps with a strictly positive coefficient
  long sign_violations = 0;
  double min_dt = std::numeric_limits<double>::infinity();
};

/// SSPRK(3,3) on any vector-like state supporting +, - and scalar *:
///   u1 = u + dt L(u)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///   u  = 1/3 u + 2/3 (u2 + dt L(u2))
template <class Vec, class Rhs>
Vec ssprk33_update(const Vec& u, double dt, Rhs&& rhs) {
  auto axpy = [](const Vec& a, double s, const Vec& b) {
    Vec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
    return out;
  };
  auto blend = [](double wa, const Vec& a, double wb, const Vec& b) {
    Vec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = wa * a[i] + wb * b[i];
    return out;
  };
  const Vec u1 = axpy(u, dt, rhs(u));
  const Vec u2 = blend(0.75, u, 0.25, axpy(u1, dt, rhs(u1)));
  return blend(1.0 / 3.0, u, 2.0 / 3.0, axpy(u2, dt, rhs(u2)));
}

/// Spectral-volume finite-volume discretisation with the sign-constrained
/// recovery in every macrocell and HLL fluxes at every subcell edge.
class Solver {
 public:
  Solver(const Grid& grid, const SolverConfig& config);

  /// d/dt of every subcell average. Updates the warm-start cache and stats.
  std::vector<ConservedState> rhs(const SimulationState& state);

  /// c_fl * (smallest subcell width) / (largest |v| + c over all subcells).
  double compute_dt(const SimulationState& state) const;

  SimulationState step(const SimulationState& state, double dt);

  using Observer = std::function<void(const SimulationState&)>;

  /// Steps until state.time == t_end exactly. When snapshot_interval > 0
  /// the step size is also clipped to land on multiples of it and
  /// `on_snapshot` sees each of those states (and the final one).
  SimulationState run(SimulationState state, double t_end,
                      double snapshot_interval = 0.0,
                      const Observer& on_snapshot = {});

  const SolverStats& stats() const { return stats_; }
  const Recovery& recovery() const { return recovery_; }

  /// Recovered functions of the last rhs evaluation, index m * 3 + variable.
  const std::vector<RecoveredFunction>& last_recovery() const { return recovered_; }

 private:
  SolverConfig config_;
  Recovery recovery_;
  std::vector<RecoveredFunction> recovered_;
  SolverStats stats_;
};

/// One-shot helpers over a fresh Solver.
std::vector<ConservedState> semidiscrete_rhs(const SimulationState& state);
double compute_dt(const SimulationState& state);
SimulationState ssprk33_step(const SimulationState& state, double dt);
SimulationState run(const SimulationState& state, double t_end);

}  // namespace enosv

#endif  // ENOSV_SOLVER_HPP_
