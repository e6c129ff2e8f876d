#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdarwin/layout.hpp"

namespace qdarwin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

/// Bad command line or config file. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& command_names();

struct RunConfig {
  std::string command;

  // Scenario parameters. Each command reads the subset it registers.
  double gamma = 0.0;
  bool detector = true;
  std::size_t sweep = 0;         // >0: evaluate a grid of this many points instead of one value
  std::string outcome = "both";  // eraser
  std::string initial = "superposition";
  std::size_t n = 4;
  double alpha = 0.70710678118654752;
  double theta = 1.5707963267948966;
  std::size_t depth = 2;
  double delta = 0.1;
  std::size_t resolution = 64;
  std::size_t cap = 200;
  std::string channel = "spam";
  std::size_t fragment = 1;

  // Emergence scan.
  std::string family = "random";
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::size_t seeds = 100;
  std::size_t threads = 1;
  bool rows = false;

  bool quick = false;  // selftest

  std::optional<std::uint64_t> seed;
  std::string output;  // empty: stdout
  std::string plot_script;
  std::size_t budget_qubits = 12;

  DimensionBudget budget() const { return {budget_qubits}; }
  /// Whether the command as configured draws random numbers.
  bool stochastic() const;
};

struct ParseResult {
  RunConfig config;
  std::string resolved;  // `key = value` lines, as echoed to stderr
  bool help = false;     // help text was requested; nothing to run
  std::string help_text;
};

/// argv[0] is the program name, argv[1] the command. Flags override values
/// read via `--config <file>`. Throws ConfigError.
ParseResult parse_config(const std::vector<std::string>& args);

}  // namespace qdarwin::cli
