#pragma once

#include <vector>

#include "casimir/cli/config.hpp"
#include "casimir/cli/table.hpp"

namespace casimir::cli {

/// Separations in metres, ascending.
std::vector<double> scan_points(const ScanSpec& scan);

/// One row per separation. Rows are ordered by r whatever the worker count; a point that
/// fails is kept with NaN values and the message in the error column.
Table run_scan(const RunConfig& config);

/// Single-atom rates: spontaneous emission of each atom and thermal absorption by B.
Table run_rates(const RunConfig& config);

/// Column names of the scan table for a quantity.
std::vector<std::string> scan_columns(Quantity q);

}  // namespace casimir::cli
