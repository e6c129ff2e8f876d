#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"

namespace qdarwin::cli {

/// Runs one experiment command (everything except selftest). Library
/// exceptions propagate.
Table run(const RunConfig& config);

/// Maps an exception to the exit-code contract and prints a diagnostic:
/// ConfigError and ArgumentError -> 2, BudgetExceeded -> 3, anything else -> 4.
int report_failure(std::exception_ptr failure, std::ostream& err);

/// Full process behaviour minus argument parsing: runs the command, writes
/// the CSV and optional plot script, reports errors on `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses, echoes the resolved config to `err`, and executes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdarwin::cli
