#pragma once

#include <string>
#include <vector>

namespace aloha {

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_full(double v);

/// Rounded display form with the given number of significant digits.
std::string format_display(double v, int significant = 3);

/// Comma-separated row with an LF terminator.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace aloha
