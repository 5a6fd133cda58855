#pragma once

#include <ostream>
#include <string>

#include "isoconic/convergence.hpp"

namespace isoconic {

/// Shortest decimal that parses back to the same double.
std::string format_exact(double v);
/// Human-facing number: 15 significant digits, "-0" printed as "0".
std::string format_human(double v);

/// CSV: header "delta,<metric>...", one row per level, then footer rows
/// "empirical_order", "ratios_used" and "constant" (value "undefined" when
/// no order could be fitted). LF line endings, no trailing separators.
void write_csv(std::ostream& out, const ConvergenceReport& report);

}  // namespace isoconic
