#include "run_config.hpp"

#include <string>

#include "enosv/cases.hpp"
#include "enosv/error.hpp"

namespace enosv::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::kRecover:
      return "recover";
    case Command::kSolve:
      return "solve";
    case Command::kConverge:
      return "converge";
  }
  return "unknown";
}

void validate(const RunConfig& c, Command command) {
  if (c.subcells < 2) throw ConfigError("--subcells must be at least 2");
  if (c.continuous < 0 || c.jumps < 0) throw ConfigError("--k and --jumps must be >= 0");
  if (c.continuous + c.jumps > c.subcells) {
    throw ConfigError("k + jumps = " + std::to_string(c.continuous + c.jumps) +
                      " exceeds the subcell count " + std::to_string(c.subcells));
  }
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("--cfl must lie in (0, 1]");
  if (!(c.gamma > 1.0)) throw ConfigError("--gamma must exceed 1");
  if (c.t_end && !(*c.t_end >= 0.0)) throw ConfigError("--t-end must be >= 0");
  if (c.snapshot_interval < 0.0) throw ConfigError("--snapshot-interval must be >= 0");

  switch (command) {
    case Command::kRecover:
      (void)static_case(c.case_name);
      break;
    case Command::kSolve:
      if (c.macrocells < 3) throw ConfigError("--macrocells must be at least 3");
      (void)make_case(c.case_name, c.gamma);
      break;
    case Command::kConverge:
      if (c.case_name != "advection") {
        throw ConfigError("converge runs the advection case only");
      }
      for (int n : c.grids) {
        if (n < 3) throw ConfigError("every convergence grid needs >= 3 macrocells");
      }
      break;
  }
}

std::vector<int> default_convergence_grids() {
  std::vector<int> grids;
  for (int n = 16; n <= 52; n += 4) grids.push_back(n);
  return grids;
}

namespace {

RunConfig static_recovery(const std::string& name) {
  RunConfig c;
  c.case_name = name;
  c.macrocells = 1;
  c.subcells = 10;
  c.continuous = 8;
  c.jumps = 2;
  return c;
}

RunConfig euler_run(const std::string& name, int macrocells, int subcells) {
  RunConfig c;
  c.case_name = name;
  c.macrocells = macrocells;
  c.subcells = subcells;
  c.continuous = subcells - 1;
  c.jumps = 1;
  return c;
}

RunConfig convergence(int subcells) {
  RunConfig c = euler_run("advection", 16, subcells);
  c.grids = default_convergence_grids();
  return c;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> p{
      {"fig2", Command::kRecover, static_recovery("static-u1"),
       "step function, 10 subcells, k=8, 2 jumps"},
      {"fig3", Command::kRecover, static_recovery("static-u2"),
       "sin(x), 10 subcells, k=8, 2 jumps"},
      {"fig4", Command::kRecover, static_recovery("static-u3"),
       "sin/cos with a jump at 0, 10 subcells, k=8, 2 jumps"},
      {"fig5a", Command::kConverge, convergence(4),
       "advection convergence, 4 subcells, k=3, 1 jump"},
      {"fig5b", Command::kConverge, convergence(8),
       "advection convergence, 8 subcells, k=7, 1 jump"},
      {"fig6", Command::kSolve, euler_run("sod", 25, 4), "Sod, 100 cells in 25 groups of 4"},
      {"fig7", Command::kSolve, euler_run("sod", 12, 8), "Sod, 96 cells in 12 groups of 8"},
      {"fig8", Command::kSolve, euler_run("lax", 25, 4), "Lax, 100 cells in 25 groups of 4"},
      {"fig9", Command::kSolve, euler_run("lax", 12, 8), "Lax, 96 cells in 12 groups of 8"},
      {"fig10", Command::kSolve, euler_run("shu-osher", 50, 4),
       "Shu-Osher, 200 cells in 50 groups of 4"},
      {"fig11", Command::kSolve, euler_run("shu-osher", 100, 4),
       "Shu-Osher, 400 cells in 100 groups of 4"},
      {"fig12", Command::kSolve, euler_run("shu-osher", 25, 8),
       "Shu-Osher, 200 cells in 25 groups of 8"},
      {"fig13", Command::kSolve, euler_run("shu-osher", 50, 8),
       "Shu-Osher, 400 cells in 50 groups of 8"},
  };
  for (auto& preset : p) preset.config.preset = preset.name;
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"case", c.case_name},
                     {"macrocells", c.macrocells},
                     {"subcells", c.subcells},
                     {"k", c.continuous},
                     {"jumps", c.jumps},
                     {"cfl", c.cfl},
                     {"gamma", c.gamma},
                     {"t_end", c.t_end ? nlohmann::json(*c.t_end) : nlohmann::json(nullptr)},
                     {"out", c.out},
                     {"snapshot_interval", c.snapshot_interval},
                     {"grids", c.grids},
                     {"preset", c.preset}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  j.at("case").get_to(c.case_name);
  j.at("macrocells").get_to(c.macrocells);
  j.at("subcells").get_to(c.subcells);
  j.at("k").get_to(c.continuous);
  j.at("jumps").get_to(c.jumps);
  j.at("cfl").get_to(c.cfl);
  j.at("gamma").get_to(c.gamma);
  if (j.at("t_end").is_null()) {
    c.t_end.reset();
  } else {
    c.t_end = j.at("t_end").get<double>();
  }
  j.at("out").get_to(c.out);
  j.at("snapshot_interval").get_to(c.snapshot_interval);
  j.at("grids").get_to(c.grids);
  j.at("preset").get_to(c.preset);
}

}  // namespace enosv::cli
