#pragma once

#include <string>
#include <string_view>

#include "cli/csv.hpp"

namespace qdarwin::cli {

/// Self-contained matplotlib script drawing the usual figure for `kind`
/// from the CSV at `csv_path`; the figure is saved next to it as PNG.
/// Throws ArgumentError for an empty table or a kind without a figure.
std::string plot_script(const Table& table, std::string_view kind, const std::string& csv_path);

/// Reads `csv_path` and writes plot_script() to `script_path`.
void emit_plot_script(const std::string& csv_path, std::string_view kind, const std::string& script_path);

}  // namespace qdarwin::cli
