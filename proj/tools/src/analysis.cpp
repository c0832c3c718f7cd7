#include "casimir/cli/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::cli {

SlopeFit fit_slope(std::span<const double> r, std::span<const double> y, double r_min,
                   double r_max) {
  if (r.size() != y.size()) throw std::invalid_argument("fit_slope: r and y differ in length");
  std::vector<double> x;
  std::vector<double> v;
  int sign = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_min || r[i] > r_max) continue;
    if (!std::isfinite(y[i])) throw std::invalid_argument("fit_slope: non-finite value in window");
    if (y[i] == 0.0) throw std::invalid_argument("fit_slope: zero value in window");
    const int s = y[i] > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      throw std::invalid_argument("fit_slope: values change sign inside the window (oscillating data)");
    }
    sign = s;
    x.push_back(std::log(r[i]));
    v.push_back(std::log(std::abs(y[i])));
  }
  const std::size_t n = x.size();
  if (n < 5) throw std::invalid_argument("fit_slope: need at least 5 points in the window");

  double mx = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    mv += v[i];
  }
  mx /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double sxx = 0.0;
  double sxv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxv += (x[i] - mx) * (v[i] - mv);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: all r values coincide");
  SlopeFit fit;
  fit.points = n;
  fit.slope = sxv / sxx;
  const double intercept = mv - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = v[i] - intercept - fit.slope * x[i];
    ssr += e * e;
  }
  fit.standard_error = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  return fit;
}

SlopeFit fit_slope(const Table& table, const std::string& column, double r_min, double r_max) {
  const auto r = table.column("r_m");
  const auto y = table.column(column);
  return fit_slope(r, y, r_min, r_max);
}

Oscillation detect_oscillation(std::span<const double> r, std::span<const double> y,
                               double r_min, double r_max) {
  if (r.size() != y.size()) throw std::invalid_argument("detect_oscillation: length mismatch");
  Oscillation out;
  std::vector<int> direction;
  // Compare consecutive non-zero samples; an exact zero between them is the crossing.
  bool have_prev = false;
  double r_prev = 0.0;
  double y_prev = 0.0;
  bool have_zero = false;
  double r_zero = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_min || r[i] > r_max || !std::isfinite(y[i])) continue;
    if (y[i] == 0.0) {
      if (!have_zero) r_zero = r[i];
      have_zero = true;
      continue;
    }
    if (have_prev && (y_prev < 0.0) != (y[i] < 0.0)) {
      const double t = y_prev / (y_prev - y[i]);
      out.crossings.push_back(have_zero ? r_zero : r_prev + t * (r[i] - r_prev));
      direction.push_back(y[i] > 0.0 ? 1 : -1);
    }
    r_prev = r[i];
    y_prev = y[i];
    have_prev = true;
    have_zero = false;
  }
  const std::size_t n = out.crossings.size();
  if (n < 2) return out;
  out.detected = true;

  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += out.crossings[i] - out.crossings[i - 1];
  out.mean_spacing = sum / static_cast<double>(n - 1);
  double var = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = out.crossings[i] - out.crossings[i - 1] - out.mean_spacing;
    var += d * d;
  }
  out.spacing_stddev = n > 2 ? std::sqrt(var / static_cast<double>(n - 2)) : 0.0;

  double period_sum = 0.0;
  std::size_t periods = 0;
  for (std::size_t i = 2; i < n; ++i) {
    if (direction[i] == direction[i - 2]) {
      period_sum += out.crossings[i] - out.crossings[i - 2];
      ++periods;
    }
  }
  out.period = periods > 0 ? period_sum / static_cast<double>(periods) : 2.0 * out.mean_spacing;
  return out;
}

Oscillation detect_oscillation(const Table& table, const std::string& column, double r_min,
                               double r_max) {
  const auto r = table.column("r_m");
  const auto y = table.column(column);
  return detect_oscillation(r, y, r_min, r_max);
}

}  // namespace casimir::cli
