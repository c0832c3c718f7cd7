#pragma once

#include <Eigen/Core>

#include "casimir/constants.hpp"
#include "casimir/medium.hpp"

namespace casimir {

using Vec3 = Eigen::Vector3d;
using DyadicGreen = Eigen::Matrix3cd;

/// Retarded dyadic Green tensor of a homogeneous medium,
///
///   G = (omega^2/c^2) e^{ikr}/r [ (1 + i/kr - 1/k^2r^2) 1 - (1 + 3i/kr - 3/k^2r^2) r^ r^ ],
///
/// evaluated in the algebraically equivalent form e^{ikr}/(n^2 r^3)[...] which stays
/// regular at omega -> 0. The contact term proportional to delta(r) is not included.
/// Requires r != r' and Im omega >= 0.
DyadicGreen green_retarded(cplx omega, const Vec3& r, const Vec3& r_prime, const Medium& medium);

/// Im G(omega, r, r) = (2/3) n omega^3 / c^3 * 1 for a lossless medium, omega > 0.
/// The real part (bare Lamb shift) diverges and is not provided.
Eigen::Matrix3d green_coincidence_im(double omega, const Medium& medium);

/// d_b . G . d_a
cplx contract(const Vec3& d_b, const DyadicGreen& g, const Vec3& d_a);

/// Bose occupation 1/(e^{omega/T} - 1). At T = 0 uses the exact limit -theta(-omega).
/// T is k_B T in frequency units.
double occupation(double omega, double temperature);

/// coth(omega / 2T) = 1 + 2 occupation(omega); sign(omega) at T = 0.
double coth_half(double omega, double temperature);

/// Keldysh components of the dipole-contracted photon propagator at one real frequency.
struct GreenComponents {
  cplx d11;
  cplx d12;
  cplx d21;
  cplx d_r;
  cplx d_a;
  double frequency = 0.0;
  double temperature = 0.0;
};

/// Build the components from a contracted retarded value d_r(omega):
///   d11 = Re d_r + i coth(omega/2T) Im d_r,
///   d12 = 2i nbar(omega) Im d_r,   d21 = -2i nbar(-omega) Im d_r,   d_a = conj(d_r).
GreenComponents keldysh_components(double omega, cplx d_r, double temperature);

GreenComponents keldysh_components(double omega, const Vec3& r, const Vec3& r_prime,
                                   const Vec3& dipole_b, const Vec3& dipole_a,
                                   const Medium& medium, double temperature);

}  // namespace casimir
