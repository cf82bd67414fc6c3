#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jclab/params.hpp"
#include "jclab/teleportation.hpp"

namespace jclab::cli {

struct GridAxis {
  std::string variable;  // kt | t | g | k | theta | phi
  double min = 0.0;
  double max = 0.0;
  int points = 0;
};

/// Lists used by the validation suite (oracle grid and metric grids).
struct ValidationGrid {
  std::vector<double> kt{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> g{0.5, 1.0, 2.0};
  std::vector<double> theta{M_PI / 4, M_PI / 2, 3 * M_PI / 4};
  std::vector<double> phi{0.0, M_PI / 3};
};

struct ScenarioConfig {
  std::string scenario;
  SystemParams params{1.0, 1.0, M_PI / 2, 0.0};
  std::vector<GridAxis> grid;  // empty: scenario default
  double t = 1.0;              // fixed time for sweeps without a time axis
  BlochAngles input{M_PI / 2, 0.0};
  std::string metric;          // sweep only
  int fock_dim = 0;            // 0: oracle policy default
  double tol = 0.0;            // 0: fixed-step integration
  std::uint64_t seed = 12345;
  std::string output_path;     // empty: "<scenario>.<format>"
  std::string format = "csv";  // csv | json
  int threads = 0;             // 0: JCLAB_THREADS env or hardware default
  ValidationGrid validation;
};

/// Built-in defaults for a scenario name; throws ConfigError for unknown names.
ScenarioConfig default_config(const std::string& scenario);

/// Parses a JSON config file on top of the scenario defaults.
/// The scenario chosen on the command line wins over the file's "scenario".
ScenarioConfig load_config(const std::string& path, const std::string& scenario);

/// Checks axis specs / metric names; throws ConfigError.
void validate_config(const ScenarioConfig& config);

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Evaluates a figure or sweep scenario on its grid (deterministic row order).
Dataset run_scenario(const ScenarioConfig& config);

/// Writes the dataset as CSV ('.' decimal, ',' separator, LF) or JSON.
void write_dataset(const Dataset& dataset, const ScenarioConfig& config,
                   const std::string& path);

/// Closed-form-vs-oracle validation suite; prints one line per check with the
/// max deviation.  Returns 0 when every check passes, 1 otherwise.
int run_validate(const ScenarioConfig& config, std::ostream& out);

/// Full command-line entry point (exit codes: 0 ok, 1 validation failure,
/// 2 configuration error).
int run_cli(int argc, char** argv);

int resolve_threads(const ScenarioConfig& config);

}  // namespace jclab::cli
