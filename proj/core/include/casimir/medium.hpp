#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "casimir/constants.hpp"

namespace casimir {

struct PermittivitySample {
  double omega = 0.0;
  cplx epsilon{1.0, 0.0};
};

/// Homogeneous isotropic medium, mu = 1. Immutable; copies share the interpolation table.
class Medium {
 public:
  enum class Kind { vacuum, constant, tabulated };

  static Medium vacuum(double light_speed = 1.0);
  /// Non-dispersive, lossless medium with real permittivity >= 1.
  static Medium constant(double permittivity, double light_speed = 1.0);
  /// Passive dispersive medium from samples on the real axis (at least 4, strictly
  /// increasing omega > 0, Im eps >= 0). Interpolated with a monotone cubic in log omega;
  /// evaluation outside the table is an error.
  static Medium tabulated(std::vector<PermittivitySample> samples, double light_speed = 1.0);
  /// Three columns: omega, Re eps, Im eps. '#' starts a comment. Frequencies are multiplied
  /// by `frequency_scale` on load.
  static Medium from_table_file(const std::filesystem::path& path, double frequency_scale = 1.0,
                                double light_speed = 1.0);

  Kind kind() const noexcept { return kind_; }
  double light_speed() const noexcept { return light_speed_; }
  bool lossless() const noexcept;

  /// Supported on the real axis and on the positive imaginary axis (all models), and
  /// anywhere in the complex plane for vacuum / constant media.
  cplx permittivity(cplx omega) const;
  cplx permeability(cplx omega) const;
  cplx refractive_index(cplx omega) const;
  /// k = n omega / c with Im k >= 0.
  cplx wave_number(cplx omega) const;

  const std::vector<PermittivitySample>& samples() const;

 private:
  struct Table;

  Medium(Kind kind, double light_speed, double epsilon, std::shared_ptr<const Table> table);

  Kind kind_;
  double light_speed_;
  double epsilon_;
  std::shared_ptr<const Table> table_;
};

}  // namespace casimir
