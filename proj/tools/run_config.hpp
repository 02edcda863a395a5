#ifndef ENOSV_TOOLS_RUN_CONFIG_HPP_
#define ENOSV_TOOLS_RUN_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace enosv::cli {

enum class Command { kRecover, kSolve, kConverge };

std::string to_string(Command c);

struct RunConfig {
  std::string case_name = "sod";
  int macrocells = 25;
  int subcells = 4;
  int continuous = 3;
  int jumps = 1;
  double cfl = 0.1;
  double gamma = 1.4;
  std::optional<double> t_end;
  std::string out = ".";
  double snapshot_interval = 0.0;
  std::vector<int> grids;  // converge only
  std::string preset;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError when the parameters are inconsistent for `command`.
void validate(const RunConfig& config, Command command);

struct Preset {
  std::string name;
  Command command;
  RunConfig config;
  std::string description;
};

/// fig2..fig13 (fig5a / fig5b for the two convergence studies).
const std::vector<Preset>& presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(const std::string& name);

/// Macrocell counts of the published convergence study: 16, 20, ..., 52.
std::vector<int> default_convergence_grids();

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

}  // namespace enosv::cli

#endif  // ENOSV_TOOLS_RUN_CONFIG_HPP_
