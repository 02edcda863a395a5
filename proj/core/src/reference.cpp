#include "enosv/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "enosv/error.hpp"

namespace enosv {

namespace {

struct BranchValue {
  double f;
  double df;
};

// Toro's pressure function for one side, with its derivative.
BranchValue pressure_branch(double p, const PrimitiveState& k, double gamma) {
  const double c = sound_speed(k, gamma);
  if (p > k.p) {
    const double a = 2.0 / ((gamma + 1.0) * k.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * k.p;
    const double root = std::sqrt(a / (p + b));
    return {(p - k.p) * root, root * (1.0 - 0.5 * (p - k.p) / (b + p))};
  }
  const double ratio = p / k.p;
  return {2.0 * c / (gamma - 1.0) * (std::pow(ratio, (gamma - 1.0) / (2.0 * gamma)) - 1.0),
          std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (k.rho * c)};
}

double star_density(double p_star, const PrimitiveState& k, double gamma) {
  const double ratio = p_star / k.p;
  if (p_star > k.p) {
    const double g6 = (gamma - 1.0) / (gamma + 1.0);
    return k.rho * (ratio + g6) / (g6 * ratio + 1.0);
  }
  return k.rho * std::pow(ratio, 1.0 / gamma);
}

constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

}  // namespace

RiemannSolution::RiemannSolution(PrimitiveState left, PrimitiveState right,
                                 double gamma, double p_star, double v_star)
    : left_(left),
      right_(right),
      gamma_(gamma),
      p_star_(p_star),
      v_star_(v_star),
      rho_star_left_(star_density(p_star, left, gamma)),
      rho_star_right_(star_density(p_star, right, gamma)) {}

double RiemannSolution::left_shock_speed() const {
  const double g = gamma_;
  const double c = sound_speed(left_, g);
  return left_.v -
         c * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / left_.p + (g - 1.0) / (2.0 * g));
}

double RiemannSolution::right_shock_speed() const {
  const double g = gamma_;
  const double c = sound_speed(right_, g);
  return right_.v +
         c * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / right_.p + (g - 1.0) / (2.0 * g));
}

PrimitiveState RiemannSolution::sample(double xi) const {
  const double g = gamma_;
  const double g1 = (g - 1.0) / (2.0 * g);
  if (xi <= v_star_) {
    const PrimitiveState& k = left_;
    const double c = sound_speed(k, g);
    if (left_shock()) {
      return xi <= left_shock_speed() ? k : PrimitiveState{rho_star_left_, v_star_, p_star_};
    }
    if (xi <= k.v - c) return k;
    const double c_star = c * std::pow(p_star_ / k.p, g1);
    if (xi > v_star_ - c_star) return {rho_star_left_, v_star_, p_star_};
    const double cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (k.v - xi));
    return {k.rho * std::pow(cf / c, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * k.v + xi),
            k.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
  }
  const PrimitiveState& k = right_;
  const double c = sound_speed(k, g);
  if (right_shock()) {
    return xi >= right_shock_speed() ? k : PrimitiveState{rho_star_right_, v_star_, p_star_};
  }
  if (xi >= k.v + c) return k;
  const double c_star = c * std::pow(p_star_ / k.p, g1);
  if (xi <= v_star_ + c_star) return {rho_star_right_, v_star_, p_star_};
  const double cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (k.v - xi));
  return {k.rho * std::pow(cf / c, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * k.v + xi),
          k.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
}

std::vector<double> RiemannSolution::wave_speeds() const {
  const double g = gamma_;
  const double g1 = (g - 1.0) / (2.0 * g);
  std::vector<double> s;
  if (left_shock()) {
    s.push_back(left_shock_speed());
  } else {
    const double c = sound_speed(left_, g);
    s.push_back(left_.v - c);
    s.push_back(v_star_ - c * std::pow(p_star_ / left_.p, g1));
  }
  s.push_back(v_star_);
  if (right_shock()) {
    s.push_back(right_shock_speed());
  } else {
    const double c = sound_speed(right_, g);
    s.push_back(v_star_ + c * std::pow(p_star_ / right_.p, g1));
    s.push_back(right_.v + c);
  }
  std::sort(s.begin(), s.end());
  return s;
}

double riemann_pressure_function(double p, const PrimitiveState& left,
                                 const PrimitiveState& right, double gamma) {
  return pressure_branch(p, left, gamma).f + pressure_branch(p, right, gamma).f +
         (right.v - left.v);
}

RiemannSolution exact_riemann(const PrimitiveState& left,
                              const PrimitiveState& right, double gamma) {
  if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0)) {
    throw NonPhysicalState("exact_riemann: non-physical initial state");
  }
  const double cl = sound_speed(left, gamma);
  const double cr = sound_speed(right, gamma);
  if (2.0 * (cl + cr) / (gamma - 1.0) <= right.v - left.v) {
    throw NumericalError("exact_riemann: initial data generate vacuum");
  }

  constexpr double kPressureFloor = 1e-8;
  const double pvrs = 0.5 * (left.p + right.p) -
                      0.125 * (right.v - left.v) * (left.rho + right.rho) * (cl + cr);
  double p = std::max(kPressureFloor, pvrs);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const BranchValue fl = pressure_branch(p, left, gamma);
    const BranchValue fr = pressure_branch(p, right, gamma);
    const double f = fl.f + fr.f + (right.v - left.v);
    if (f == 0.0) {
      converged = true;
      break;
    }
    double next = p - f / (fl.df + fr.df);
    if (next < 0.0) next = kPressureFloor;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("exact_riemann: Newton iteration did not converge");
  }
  const double v = 0.5 * (left.v + right.v) +
                   0.5 * (pressure_branch(p, right, gamma).f - pressure_branch(p, left, gamma).f);
  return RiemannSolution(left, right, gamma, p, v);
}

ConservedState riemann_cell_average(const RiemannSolution& sol, double x0,
                                    double t, double a, double b) {
  if (!(b > a)) throw ConfigError("riemann_cell_average: need a < b");
  const double gamma = sol.gamma();
  std::vector<double> cuts{a};
  if (t > 0.0) {
    for (double s : sol.wave_speeds()) {
      const double x = x0 + s * t;
      if (x > a && x < b) cuts.push_back(x);
    }
  } else if (x0 > a && x0 < b) {
    cuts.push_back(x0);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  auto state_at = [&](double x) {
    if (t > 0.0) return primitive_to_conserved(sol.sample((x - x0) / t), gamma);
    return primitive_to_conserved(x < x0 ? sol.left() : sol.right(), gamma);
  };
  ConservedState sum;
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double lo = cuts[piece];
    const double hi = cuts[piece + 1];
    if (!(hi > lo)) continue;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      sum += (kGaussWeights[q] * half) * state_at(mid + half * kGaussNodes[q]);
    }
  }
  return (1.0 / (b - a)) * sum;
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) <= std::abs(b) ? a : b;
}

namespace {

ConservedState minmod_state(const ConservedState& a, const ConservedState& b) {
  return {minmod(a.rho, b.rho), minmod(a.momentum, b.momentum),
          minmod(a.energy, b.energy)};
}

std::vector<ConservedState> muscl_rhs(const MusclConfig& config,
                                      const std::vector<ConservedState>& u) {
  const std::size_t n = u.size();
  const double dx = (config.hi - config.lo) / static_cast<double>(n);
  const bool periodic = config.boundary == Boundary::kPeriodic;

  // Two ghost cells per side.
  std::vector<ConservedState> ext(n + 4);
  for (std::size_t i = 0; i < n; ++i) ext[i + 2] = u[i];
  ext[0] = periodic ? u[n - 2] : u[0];
  ext[1] = periodic ? u[n - 1] : u[0];
  ext[n + 2] = periodic ? u[0] : u[n - 1];
  ext[n + 3] = periodic ? u[1] : u[n - 1];

  std::vector<ConservedState> half_slope(n + 4);
  for (std::size_t i = 1; i + 1 < n + 4; ++i) {
    half_slope[i] = 0.5 * minmod_state(ext[i] - ext[i - 1], ext[i + 1] - ext[i]);
  }

  std::vector<Flux> flux(n + 1);
  for (std::size_t f = 0; f <= n; ++f) {
    const std::size_t i = f + 1;  // cell left of face f in ext
    try {
      flux[f] = hll_flux(ext[i] + half_slope[i], ext[i + 1] - half_slope[i + 1],
                         config.gamma);
    } catch (const NonPhysicalState& err) {
      throw NonPhysicalState("MUSCL face " + std::to_string(f) + ": " + err.what());
    }
  }
  std::vector<ConservedState> dudt(n);
  for (std::size_t c = 0; c < n; ++c) dudt[c] = (1.0 / dx) * (flux[c] - flux[c + 1]);
  return dudt;
}

}  // namespace

std::vector<ConservedState> muscl_solve(
    const MusclConfig& config, std::vector<ConservedState> u, double t_end,
    const std::function<void(const std::vector<ConservedState>&)>& on_step) {
  if (u.size() < 4) throw ConfigError("MUSCL needs at least 4 cells");
  if (!(config.hi > config.lo)) throw ConfigError("MUSCL: empty domain");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  const double dx = (config.hi - config.lo) / static_cast<double>(u.size());
  double t = 0.0;
  while (t < t_end) {
    double c_max = 0.0;
    for (const auto& cell : u) c_max = std::max(c_max, max_signal_speed(cell, config.gamma));
    double dt = config.cfl * dx / c_max;
    const bool last = t + dt * (1.0 + 1e-10) >= t_end;
    if (last) dt = t_end - t;
    u = ssprk33_update(u, dt, [&](const std::vector<ConservedState>& v) {
      return muscl_rhs(config, v);
    });
    t = last ? t_end : t + dt;
    if (on_step) on_step(u);
  }
  return u;
}

}  // namespace enosv
