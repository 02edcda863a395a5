#ifndef ENOSV_EULER_HPP_
#define ENOSV_EULER_HPP_

#include <array>
#include <string_view>

namespace enosv {

inline constexpr double kDefaultGamma = 1.4;

/// (rho, rho v, E)
struct ConservedState {
  double rho = 0.0;
  double momentum = 0.0;
  double energy = 0.0;

  ConservedState& operator+=(const ConservedState& o) {
    rho += o.rho;
    momentum += o.momentum;
    energy += o.energy;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) {
    rho -= o.rho;
    momentum -= o.momentum;
    energy -= o.energy;
    return *this;
  }
  ConservedState& operator*=(double s) {
    rho *= s;
    momentum *= s;
    energy *= s;
    return *this;
  }
  friend ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
  friend ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
  friend ConservedState operator*(double s, ConservedState a) { return a *= s; }
  friend ConservedState operator*(ConservedState a, double s) { return a *= s; }

  double operator[](int i) const { return i == 0 ? rho : (i == 1 ? momentum : energy); }
  double& operator[](int i) { return i == 0 ? rho : (i == 1 ? momentum : energy); }

  bool operator==(const ConservedState&) const = default;
};

/// Flux vectors share the layout of the conserved variables.
using Flux = ConservedState;

inline constexpr int kVariables = 3;

struct PrimitiveState {
  double rho = 0.0;
  double v = 0.0;
  double p = 0.0;

  bool operator==(const PrimitiveState&) const = default;
};

/// Throws NonPhysicalState when rho <= 0 or p <= 0; `where` is prepended to
/// the message.
PrimitiveState conserved_to_primitive(const ConservedState& u, double gamma,
                                      std::string_view where = {});
ConservedState primitive_to_conserved(const PrimitiveState& w, double gamma);

double pressure(const ConservedState& u, double gamma);
double sound_speed(const PrimitiveState& w, double gamma);

/// (rho v, rho v^2 + p, v (E + p))
Flux euler_flux(const ConservedState& u, double gamma);
Flux euler_flux(const ConservedState& u, const PrimitiveState& w);

struct WaveSpeeds {
  double left = 0.0;
  double right = 0.0;
};

/// a_l = min(v_l - c_l, v_r - c_r), a_r = max(v_l + c_l, v_r + c_r).
WaveSpeeds davis_speeds(const PrimitiveState& left, const PrimitiveState& right,
                        double gamma);

Flux hll_flux(const ConservedState& u_left, const ConservedState& u_right,
              double gamma);

/// |v| + c
double max_signal_speed(const ConservedState& u, double gamma);

}  // namespace enosv

#endif  // ENOSV_EULER_HPP_
