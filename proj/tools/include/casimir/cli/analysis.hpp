#pragma once

#include <span>
#include <string>
#include <vector>

#include "casimir/cli/table.hpp"

namespace casimir::cli {

struct SlopeFit {
  double slope = 0.0;
  double standard_error = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log|y| against log r over r in [r_min, r_max].
/// Throws std::invalid_argument for fewer than 5 points, zero values or a sign change.
SlopeFit fit_slope(std::span<const double> r, std::span<const double> y, double r_min,
                   double r_max);
SlopeFit fit_slope(const Table& table, const std::string& column, double r_min, double r_max);

struct Oscillation {
  bool detected = false;
  std::vector<double> crossings;
  /// Mean distance between consecutive zero crossings and its standard deviation.
  double mean_spacing = 0.0;
  double spacing_stddev = 0.0;
  /// Mean distance between crossings of the same direction (one full period).
  double period = 0.0;
};

/// Linearly interpolated zero crossings of y(r) within [r_min, r_max].
Oscillation detect_oscillation(std::span<const double> r, std::span<const double> y,
                               double r_min, double r_max);
Oscillation detect_oscillation(const Table& table, const std::string& column, double r_min,
                               double r_max);

}  // namespace casimir::cli
