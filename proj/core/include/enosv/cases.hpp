#ifndef ENOSV_CASES_HPP_
#define ENOSV_CASES_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enosv/discretization.hpp"
#include "enosv/euler.hpp"
#include "enosv/reference.hpp"
#include "enosv/solver.hpp"

namespace enosv {

enum class ExactKind { kFunction, kRiemann, kMusclReference, kNone };

struct RiemannData {
  PrimitiveState left;
  PrimitiveState right;
  double x0 = 0.0;
};

/// An Euler initial-value problem and what it is compared against.
struct TestCase {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  Boundary boundary = Boundary::kTransmissive;
  double t_end = 0.0;
  ExactKind exact = ExactKind::kNone;

  std::function<PrimitiveState(double x)> initial;
  /// Exact mean conserved state over [a, b] at time t; available for
  /// kFunction and kRiemann cases, and for every case at t = 0.
  std::function<ConservedState(double a, double b, double t, double gamma)> average;
  std::optional<RiemannData> riemann;
};

/// Density bump 1 + exp(-(x-1)^2 / 2) advected with v = p = 1 on the
/// periodic domain [-5, 15].
TestCase case_advection();
/// Sod's shock tube on [-5, 5], t_end = 1.8.
TestCase case_sod();
/// Lax's problem on [-5, 5], t_end = 1.2.
TestCase case_lax();
/// Shock hitting a density sine wave on [0, 10], t_end = 1.8.
TestCase case_shu_osher();

/// advection | sod | lax | shu-osher. Throws ConfigError otherwise.
TestCase make_case(const std::string& name, double gamma = kDefaultGamma);
const std::vector<std::string>& case_names();

/// Throws ConfigError if a wave leaving the initial discontinuity reaches
/// a non-periodic boundary before t_end.
void check_waves_stay_inside(const TestCase& c, double gamma);

/// Scalar functions on [-1, 1] for the static recovery tests.
struct StaticCase {
  std::string name;
  std::function<double(double)> value;
  /// Exact mean over [a, b].
  std::function<double(double, double)> average;
};

/// u1 (step 1 / -1), u2 (sin), u3 (sin left of 0, cos right of it).
/// Accepts "u1" as well as "static-u1".
StaticCase static_case(const std::string& name);

SimulationState initial_state(const TestCase& c, const Grid& grid,
                              const SolverConfig& config);

/// Exact subcell averages at time t (kFunction and kRiemann cases).
std::vector<ConservedState> exact_subcell_averages(const TestCase& c,
                                                   const Grid& grid, double t,
                                                   double gamma);

/// Averages of a uniform-grid profile over [lo, hi] integrated exactly
/// (as a piecewise constant) over every subcell of `grid`.
std::vector<ConservedState> resample_profile(std::span<const ConservedState> profile,
                                             double lo, double hi, const Grid& grid);

struct ErrorNorms {
  ConservedState l1;    // sum |e| * subcell width
  ConservedState linf;  // max |e|
};

/// Throws ConfigError on size mismatch.
ErrorNorms error_norms(const Grid& grid, std::span<const ConservedState> numerical,
                       std::span<const ConservedState> exact);

/// MUSCL solution of `c` on `cells` uniform cells at c.t_end. When
/// cache_dir is non-empty the profile is stored there as CSV, keyed by
/// case, resolution, final time, gamma and cfl, and reused when present.
std::vector<ConservedState> muscl_reference(const TestCase& c, int cells,
                                            double gamma, double cfl = 0.1,
                                            const std::string& cache_dir = {});

}  // namespace enosv

#endif  // ENOSV_CASES_HPP_
