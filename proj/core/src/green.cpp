#include "casimir/green.hpp"

#include <cmath>

#include "casimir/error.hpp"

namespace casimir {

DyadicGreen green_retarded(cplx omega, const Vec3& r, const Vec3& r_prime, const Medium& medium) {
  if (omega.imag() < 0.0) throw DomainError("retarded Green tensor requires Im omega >= 0");
  const Vec3 sep = r - r_prime;
  const double dist = sep.norm();
  if (dist == 0.0) {
    throw CoincidentPointsError(
        "green_retarded: r == r'; use green_coincidence_im for the coincidence limit");
  }
  const Vec3 unit = sep / dist;

  const cplx n2 = medium.permittivity(omega) * medium.permeability(omega);
  const cplx k = medium.wave_number(omega);
  const cplx kr = k * dist;
  const cplx kr2 = kr * kr;
  const cplx phase = std::exp(I * kr) / (n2 * dist * dist * dist);

  const cplx transverse = phase * (kr2 + I * kr - 1.0);
  const cplx radial = phase * (kr2 + 3.0 * I * kr - 3.0);

  DyadicGreen g = transverse * DyadicGreen::Identity();
  g -= radial * (unit * unit.transpose()).cast<cplx>();
  return g;
}

Eigen::Matrix3d green_coincidence_im(double omega, const Medium& medium) {
  if (!(omega > 0.0)) throw DomainError("green_coincidence_im requires omega > 0");
  if (!medium.lossless()) {
    throw UnsupportedModelError("coincidence limit is only available for lossless media");
  }
  const double n = medium.refractive_index(omega).real();
  const double c = medium.light_speed();
  return (2.0 / 3.0) * n * std::pow(omega / c, 3) * Eigen::Matrix3d::Identity();
}

cplx contract(const Vec3& d_b, const DyadicGreen& g, const Vec3& d_a) {
  return d_b.cast<cplx>().dot(g * d_a.cast<cplx>());
}

double occupation(double omega, double temperature) {
  if (temperature < 0.0 || std::isnan(temperature)) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) {
    if (omega > 0.0) return 0.0;
    if (omega < 0.0) return -1.0;
    return -0.5;
  }
  if (omega == 0.0) throw SingularityError("thermal occupation diverges at omega = 0 for T > 0");
  return 1.0 / std::expm1(omega / temperature);
}

double coth_half(double omega, double temperature) {
  return 1.0 + 2.0 * occupation(omega, temperature);
}

GreenComponents keldysh_components(double omega, cplx d_r, double temperature) {
  const double nbar_pos = occupation(omega, temperature);
  const double nbar_neg = occupation(-omega, temperature);
  const double coth = 1.0 + 2.0 * nbar_pos;
  const double re = d_r.real();
  const double im = d_r.imag();

  GreenComponents out;
  out.frequency = omega;
  out.temperature = temperature;
  out.d_r = d_r;
  out.d_a = std::conj(d_r);
  out.d11 = cplx{re, coth * im};
  out.d12 = cplx{0.0, 2.0 * nbar_pos * im};
  out.d21 = cplx{0.0, -2.0 * nbar_neg * im};
  return out;
}

GreenComponents keldysh_components(double omega, const Vec3& r, const Vec3& r_prime,
                                   const Vec3& dipole_b, const Vec3& dipole_a,
                                   const Medium& medium, double temperature) {
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature > 0.0 && omega == 0.0) {
    throw SingularityError("keldysh_components: omega = 0 with T > 0");
  }
  const cplx d_r = contract(dipole_b, green_retarded(omega, r, r_prime, medium), dipole_a);
  return keldysh_components(omega, d_r, temperature);
}

}  // namespace casimir
