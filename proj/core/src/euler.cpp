#include "enosv/euler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enosv/error.hpp"

namespace enosv {

namespace {

std::string describe(std::string_view where, const char* what,
                     const ConservedState& u) {
  std::string msg = where.empty() ? std::string() : std::string(where) + ": ";
  return msg + what + " (rho=" + std::to_string(u.rho) +
         ", rho v=" + std::to_string(u.momentum) + ", E=" + std::to_string(u.energy) + ")";
}

}  // namespace

double pressure(const ConservedState& u, double gamma) {
  return (gamma - 1.0) * (u.energy - 0.5 * u.momentum * u.momentum / u.rho);
}

PrimitiveState conserved_to_primitive(const ConservedState& u, double gamma,
                                      std::string_view where) {
  if (!(u.rho > 0.0)) [[unlikely]] {
    throw NonPhysicalState(describe(where, "non-positive density", u));
  }
  PrimitiveState w{u.rho, u.momentum / u.rho, pressure(u, gamma)};
  if (!(w.p > 0.0)) [[unlikely]] {
    throw NonPhysicalState(describe(where, "non-positive pressure", u));
  }
  return w;
}

ConservedState primitive_to_conserved(const PrimitiveState& w, double gamma) {
  return {w.rho, w.rho * w.v, w.p / (gamma - 1.0) + 0.5 * w.rho * w.v * w.v};
}

double sound_speed(const PrimitiveState& w, double gamma) {
  return std::sqrt(gamma * w.p / w.rho);
}

Flux euler_flux(const ConservedState& u, const PrimitiveState& w) {
  return {u.momentum, u.momentum * w.v + w.p, w.v * (u.energy + w.p)};
}

Flux euler_flux(const ConservedState& u, double gamma) {
  return euler_flux(u, conserved_to_primitive(u, gamma));
}

WaveSpeeds davis_speeds(const PrimitiveState& left, const PrimitiveState& right,
                        double gamma) {
  const double cl = sound_speed(left, gamma);
  const double cr = sound_speed(right, gamma);
  return {std::min(left.v - cl, right.v - cr), std::max(left.v + cl, right.v + cr)};
}

Flux hll_flux(const ConservedState& u_left, const ConservedState& u_right,
              double gamma) {
  const PrimitiveState wl = conserved_to_primitive(u_left, gamma, "hll left state");
  const PrimitiveState wr = conserved_to_primitive(u_right, gamma, "hll right state");
  const WaveSpeeds a = davis_speeds(wl, wr, gamma);
  if (a.left >= 0.0) return euler_flux(u_left, wl);
  if (a.right <= 0.0) return euler_flux(u_right, wr);
  const Flux fl = euler_flux(u_left, wl);
  const Flux fr = euler_flux(u_right, wr);
  // (a_r f_l - a_l f_r + a_r a_l (u_r - u_l)) / (a_r - a_l), rearranged as a
  // correction to f_l so equal states reproduce the physical flux exactly.
  const double scale = a.left / (a.right - a.left);
  return fl + scale * (a.right * (u_right - u_left) - (fr - fl));
}

double max_signal_speed(const ConservedState& u, double gamma) {
  const PrimitiveState w = conserved_to_primitive(u, gamma);
  return std::abs(w.v) + sound_speed(w, gamma);
}

}  // namespace enosv
