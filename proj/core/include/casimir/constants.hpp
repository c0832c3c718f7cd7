#pragma once

#include <complex>
#include <numbers>

namespace casimir {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Hartree atomic units (hbar = e = m_e = 1, Gaussian electrodynamics).
namespace atomic_units {
inline constexpr double speed_of_light = 137.035999084;
inline constexpr double bohr_radius_m = 5.29177210903e-11;
inline constexpr double angular_frequency_rad_s = 4.134137333518212e16;  // E_h / hbar
inline constexpr double hartree_per_kelvin = 3.166811563455608e-6;       // k_B / E_h

inline constexpr double length_from_si(double metres) { return metres / bohr_radius_m; }
inline constexpr double length_to_si(double bohr) { return bohr * bohr_radius_m; }
inline constexpr double frequency_from_si(double rad_s) { return rad_s / angular_frequency_rad_s; }
inline constexpr double frequency_to_si(double au) { return au * angular_frequency_rad_s; }
inline constexpr double temperature_from_si(double kelvin) { return kelvin * hartree_per_kelvin; }
}  // namespace atomic_units

}  // namespace casimir
