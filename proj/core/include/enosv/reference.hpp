#ifndef ENOSV_REFERENCE_HPP_
#define ENOSV_REFERENCE_HPP_

#include <functional>
#include <vector>

#include "enosv/euler.hpp"
#include "enosv/solver.hpp"

namespace enosv {

/// Exact solution of the Euler Riemann problem, self-similar in x / t.
class RiemannSolution {
 public:
  RiemannSolution(PrimitiveState left, PrimitiveState right, double gamma,
                  double p_star, double v_star);

  double p_star() const { return p_star_; }
  double v_star() const { return v_star_; }
  bool left_shock() const { return p_star_ > left_.p; }
  bool right_shock() const { return p_star_ > right_.p; }
  double rho_star_left() const { return rho_star_left_; }
  double rho_star_right() const { return rho_star_right_; }
  const PrimitiveState& left() const { return left_; }
  const PrimitiveState& right() const { return right_; }
  double gamma() const { return gamma_; }

  /// Primitive state along the ray x / t = xi.
  PrimitiveState sample(double xi) const;

  /// Ascending wave speeds bounding every region where the solution is
  /// either constant or a rarefaction fan: shock speeds, fan heads and
  /// tails, and the contact speed.
  std::vector<double> wave_speeds() const;

  /// Speed of the shock on the given side; only meaningful for a shock.
  double left_shock_speed() const;
  double right_shock_speed() const;

 private:
  PrimitiveState left_;
  PrimitiveState right_;
  double gamma_;
  double p_star_;
  double v_star_;
  double rho_star_left_;
  double rho_star_right_;
};

/// f_L(p) + f_R(p) + (v_R - v_L); root is the star pressure.
double riemann_pressure_function(double p, const PrimitiveState& left,
                                 const PrimitiveState& right, double gamma);

/// Newton iteration on the pressure function from the primitive-variable
/// estimate. Throws NumericalError when the data generate vacuum or Newton
/// does not converge in 100 iterations.
RiemannSolution exact_riemann(const PrimitiveState& left,
                              const PrimitiveState& right, double gamma);

/// Mean conserved state over [a, b] at time t of the Riemann problem with
/// its initial discontinuity at x0. Waves split the interval; each piece
/// is integrated with Gauss-Legendre quadrature.
ConservedState riemann_cell_average(const RiemannSolution& sol, double x0,
                                    double t, double a, double b);

/// 0 for slopes of opposite sign, otherwise the smaller in magnitude.
double minmod(double a, double b);

struct MusclConfig {
  double lo = 0.0;
  double hi = 1.0;
  double cfl = 0.1;
  double gamma = kDefaultGamma;
  Boundary boundary = Boundary::kTransmissive;
};

/// Uniform-grid MUSCL scheme: minmod-limited linear recovery of the
/// conserved variables, HLL fluxes, SSPRK(3,3). `initial` holds the cell
/// averages; returns the averages at t_end. `on_step` sees the averages
/// after every completed step.
std::vector<ConservedState> muscl_solve(
    const MusclConfig& config, std::vector<ConservedState> initial, double t_end,
    const std::function<void(const std::vector<ConservedState>&)>& on_step = {});

}  // namespace enosv

#endif  // ENOSV_REFERENCE_HPP_
