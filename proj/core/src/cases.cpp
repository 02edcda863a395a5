#include "enosv/cases.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "enosv/error.hpp"
#include "enosv/io.hpp"

namespace enosv {

namespace {

constexpr double kAdvectionLo = -5.0;
constexpr double kAdvectionHi = 15.0;
constexpr double kEpsilon = 0.2;  // Shu-Osher entropy wave amplitude
constexpr double kShock = 1.0;

// Mean of exp(-(x - centre)^2 / 2) over [a, b].
double gaussian_mean(double a, double b, double centre) {
  const double s = std::numbers::sqrt2;
  return std::sqrt(std::numbers::pi / 2.0) *
         (std::erf((b - centre) / s) - std::erf((a - centre) / s)) / (b - a);
}

double advection_density_mean(double a, double b, double t) {
  const double period = kAdvectionHi - kAdvectionLo;
  double centre = std::fmod(1.0 + t - kAdvectionLo, period);
  if (centre < 0.0) centre += period;
  centre += kAdvectionLo;
  double mean = 1.0;
  for (int image = -1; image <= 1; ++image) {
    mean += gaussian_mean(a, b, centre + image * period);
  }
  return mean;
}

TestCase riemann_case(std::string name, RiemannData data, double lo, double hi,
                      double t_end) {
  TestCase c;
  c.name = std::move(name);
  c.lo = lo;
  c.hi = hi;
  c.boundary = Boundary::kTransmissive;
  c.t_end = t_end;
  c.exact = ExactKind::kRiemann;
  c.riemann = data;
  c.initial = [data](double x) { return x <= data.x0 ? data.left : data.right; };
  c.average = [data](double a, double b, double t, double gamma) {
    const RiemannSolution sol = exact_riemann(data.left, data.right, gamma);
    return riemann_cell_average(sol, data.x0, t, a, b);
  };
  return c;
}

}  // namespace

TestCase case_advection() {
  TestCase c;
  c.name = "advection";
  c.lo = kAdvectionLo;
  c.hi = kAdvectionHi;
  c.boundary = Boundary::kPeriodic;
  c.t_end = 10.0;
  c.exact = ExactKind::kFunction;
  c.initial = [](double x) {
    return PrimitiveState{1.0 + std::exp(-(x - 1.0) * (x - 1.0) / 2.0), 1.0, 1.0};
  };
  c.average = [](double a, double b, double t, double gamma) {
    // v = p = 1: momentum equals density, energy is affine in density.
    const double rho = advection_density_mean(a, b, t);
    return ConservedState{rho, rho, 1.0 / (gamma - 1.0) + 0.5 * rho};
  };
  return c;
}

TestCase case_sod() {
  return riemann_case("sod", {{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 0.0}, -5.0, 5.0, 1.8);
}

TestCase case_lax() {
  return riemann_case("lax", {{0.445, 0.698, 3.528}, {0.5, 0.0, 0.571}, 0.0}, -5.0, 5.0,
                      1.2);
}

TestCase case_shu_osher() {
  const PrimitiveState post{3.857143, 2.629369, 10.33333};
  TestCase c;
  c.name = "shu-osher";
  c.lo = 0.0;
  c.hi = 10.0;
  c.boundary = Boundary::kTransmissive;
  c.t_end = 1.8;
  c.exact = ExactKind::kMusclReference;
  c.riemann = RiemannData{post, {1.0 + kEpsilon * std::sin(5.0 * kShock), 0.0, 1.0}, kShock};
  c.initial = [post](double x) {
    if (x < kShock) return post;
    return PrimitiveState{1.0 + kEpsilon * std::sin(5.0 * x), 0.0, 1.0};
  };
  c.average = [post](double a, double b, double t, double gamma) {
    if (t != 0.0) throw ConfigError("shu-osher has no exact solution for t > 0");
    ConservedState sum;
    if (a < kShock) {
      sum += (std::min(b, kShock) - a) * primitive_to_conserved(post, gamma);
    }
    if (b > kShock) {
      const double lo = std::max(a, kShock);
      // Integral of 1 + eps sin(5x); v = 0 and p = 1 fix the energy.
      const double mass = (b - lo) + kEpsilon * (std::cos(5.0 * lo) - std::cos(5.0 * b)) / 5.0;
      sum += ConservedState{mass, 0.0, (b - lo) / (gamma - 1.0)};
    }
    return (1.0 / (b - a)) * sum;
  };
  return c;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"advection", "sod", "lax", "shu-osher"};
  return names;
}

void check_waves_stay_inside(const TestCase& c, double gamma) {
  if (c.boundary == Boundary::kPeriodic || !c.riemann) return;
  const RiemannSolution sol = exact_riemann(c.riemann->left, c.riemann->right, gamma);
  const std::vector<double> speeds = sol.wave_speeds();
  const double left = c.riemann->x0 + speeds.front() * c.t_end;
  const double right = c.riemann->x0 + speeds.back() * c.t_end;
  if (left <= c.lo || right >= c.hi) {
    std::ostringstream msg;
    msg << c.name << ": waves reach [" << left << ", " << right
        << "] by t_end, outside the domain [" << c.lo << ", " << c.hi << "]";
    throw ConfigError(msg.str());
  }
}

TestCase make_case(const std::string& name, double gamma) {
  TestCase c;
  if (name == "advection") {
    c = case_advection();
  } else if (name == "sod") {
    c = case_sod();
  } else if (name == "lax") {
    c = case_lax();
  } else if (name == "shu-osher") {
    c = case_shu_osher();
  } else {
    throw ConfigError("unknown case '" + name + "'");
  }
  check_waves_stay_inside(c, gamma);
  return c;
}

StaticCase static_case(const std::string& name) {
  const std::string key = name.rfind("static-", 0) == 0 ? name.substr(7) : name;
  StaticCase s;
  s.name = "static-" + key;
  if (key == "u1") {
    s.value = [](double x) { return x < 0.0 ? 1.0 : -1.0; };
    s.average = [](double a, double b) {
      const double neg = std::clamp(0.0, a, b) - a;  // length left of 0
      const double pos = b - std::clamp(0.0, a, b);
      return (neg - pos) / (b - a);
    };
  } else if (key == "u2") {
    s.value = [](double x) { return std::sin(x); };
    s.average = [](double a, double b) { return (std::cos(a) - std::cos(b)) / (b - a); };
  } else if (key == "u3") {
    s.value = [](double x) { return x < 0.0 ? std::sin(x) : std::cos(x); };
    s.average = [](double a, double b) {
      const double m = std::clamp(0.0, a, b);
      // int sin = -cos on [a, m], int cos = sin on [m, b]
      return ((std::cos(a) - std::cos(m)) + (std::sin(b) - std::sin(m))) / (b - a);
    };
  } else {
    throw ConfigError("unknown static case '" + name + "'");
  }
  return s;
}

SimulationState initial_state(const TestCase& c, const Grid& grid,
                              const SolverConfig& config) {
  SimulationState state{grid, {}, 0.0, config};
  state.config.boundary = c.boundary;
  state.averages.resize(grid.total_subcells());
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < grid.subcells_per_macrocell(); ++i) {
      state.at(m, i) =
          c.average(grid.subcell_left(m, i), grid.subcell_right(m, i), 0.0, config.gamma);
    }
  }
  return state;
}

std::vector<ConservedState> exact_subcell_averages(const TestCase& c,
                                                   const Grid& grid, double t,
                                                   double gamma) {
  if (c.exact != ExactKind::kFunction && c.exact != ExactKind::kRiemann && t != 0.0) {
    throw ConfigError(c.name + " has no exact solution");
  }
  std::vector<ConservedState> out(grid.total_subcells());
  const int s = grid.subcells_per_macrocell();
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < s; ++i) {
      out[m * s + i] = c.average(grid.subcell_left(m, i), grid.subcell_right(m, i), t, gamma);
    }
  }
  return out;
}

std::vector<ConservedState> resample_profile(std::span<const ConservedState> profile,
                                             double lo, double hi, const Grid& grid) {
  const auto n = static_cast<long>(profile.size());
  if (n == 0) throw ConfigError("empty reference profile");
  const double dx = (hi - lo) / static_cast<double>(n);
  std::vector<ConservedState> out(grid.total_subcells());
  const int s = grid.subcells_per_macrocell();
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < s; ++i) {
      const double a = grid.subcell_left(m, i);
      const double b = grid.subcell_right(m, i);
      const long first = std::clamp(static_cast<long>(std::floor((a - lo) / dx)), 0L, n - 1);
      const long last = std::clamp(static_cast<long>(std::floor((b - lo) / dx)), 0L, n - 1);
      ConservedState sum;
      for (long k = first; k <= last; ++k) {
        const double cl = lo + k * dx;
        const double overlap = std::min(b, cl + dx) - std::max(a, cl);
        if (overlap > 0.0) sum += overlap * profile[k];
      }
      out[m * s + i] = (1.0 / (b - a)) * sum;
    }
  }
  return out;
}

ErrorNorms error_norms(const Grid& grid, std::span<const ConservedState> numerical,
                       std::span<const ConservedState> exact) {
  if (numerical.size() != grid.total_subcells() || exact.size() != grid.total_subcells()) {
    throw ConfigError("error_norms: profiles do not match the grid");
  }
  ErrorNorms norms;
  const int s = grid.subcells_per_macrocell();
  for (std::size_t m = 0; m < grid.macrocells(); ++m) {
    for (int i = 0; i < s; ++i) {
      const std::size_t g = m * s + i;
      const double w = grid.subcell_width(m, i);
      for (int v = 0; v < kVariables; ++v) {
        const double e = std::abs(numerical[g][v] - exact[g][v]);
        norms.l1[v] += w * e;
        norms.linf[v] = std::max(norms.linf[v], e);
      }
    }
  }
  return norms;
}

std::vector<ConservedState> muscl_reference(const TestCase& c, int cells,
                                            double gamma, double cfl,
                                            const std::string& cache_dir) {
  namespace fs = std::filesystem;
  fs::path cache;
  if (!cache_dir.empty()) {
    std::ostringstream key;
    key << "muscl_" << c.name << "_N" << cells << "_t" << format_double(c.t_end) << "_g"
        << format_double(gamma) << "_cfl" << format_double(cfl) << ".csv";
    cache = fs::path(cache_dir) / key.str();
    if (fs::exists(cache)) {
      const std::vector<ProfileRow> rows = read_profile_csv(cache.string());
      if (static_cast<int>(rows.size()) == cells) {
        std::vector<ConservedState> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.u);
        return out;
      }
    }
  }

  const double dx = (c.hi - c.lo) / cells;
  std::vector<ConservedState> initial(cells);
  for (int i = 0; i < cells; ++i) {
    initial[i] = c.average(c.lo + i * dx, c.lo + (i + 1) * dx, 0.0, gamma);
  }
  MusclConfig config{c.lo, c.hi, cfl, gamma, c.boundary};
  std::vector<ConservedState> out = muscl_solve(config, std::move(initial), c.t_end);

  if (!cache.empty()) {
    fs::create_directories(cache.parent_path());
    std::vector<ProfileRow> rows(cells);
    for (int i = 0; i < cells; ++i) rows[i] = {c.lo + i * dx, c.lo + (i + 1) * dx, out[i]};
    const fs::path tmp = cache.string() + ".tmp";
    write_profile_csv(tmp.string(), rows, gamma);
    fs::rename(tmp, cache);
  }
  return out;
}

}  // namespace enosv
