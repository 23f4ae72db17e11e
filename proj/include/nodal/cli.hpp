#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nodal::cli {

enum class Command { barrier, symmetrize, simulate, report, help };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesis = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::help;
  std::string help_text;

  // barrier
  std::string target = "mu0";
  double delta = 0.5;
  std::optional<double> epsilon;  // empty: largest admissible
  int truncation = 100;
  std::string cns_convention = "kac_rice_exact";

  // symmetrize
  std::vector<double> radii;  // empty: the default schedule for the target
  std::string t_mode = "prop";
  std::optional<double> T;

  // simulate
  int grid = 500;
  double half_width = 20.0;
  double counting_radius = 18.0;
  int terms = 100;
  int samples = 200;
  int workers = 1;
  int h_max = 8;
  std::optional<double> xi0;
  std::string export_field;

  // report
  std::vector<std::string> inputs;

  std::uint64_t seed = 1;
  std::string out;
  bool deterministic_output = false;
};

/// args excludes the program name. A `--config FILE` holds flat `key = value`
/// lines whose keys are the subcommand's long flag names; flags given on the
/// command line win. Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs one command. Returns kExitOk, kExitHypothesis or kExitUsage.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace nodal::cli
