#include "casimir/self_energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "casimir/error.hpp"

namespace casimir {

namespace {

void require_state(const TwoLevelAtom& atom, AtomState state, const char* what) {
  atom.validate();
  if (atom.state != state) throw DomainError(what);
}

// -(1/2 pi) Int_0^inf d xi alpha_A(i xi) alpha_B(i xi) squared(i xi)
template <class AlphaA, class AlphaB>
quad::QuadratureResult rotated_two_body(AlphaA alpha_a, AlphaB alpha_b, double omega_a,
                                        double omega_b, const PairCoupling& coupling,
                                        const quad::Tolerance& tol) {
  const double field_scale = coupling.decay_scale();
  const double scale = std::min({field_scale, omega_a, omega_b});
  auto integrand = [&](double xi) {
    const cplx w{0.0, xi};
    return alpha_a(w) * alpha_b(w) * coupling.squared(w);
  };

  // Normalise so that the absolute tolerance is relative to the natural size of the integral.
  double ref = 0.0;
  for (double t : {1e-3, 0.1, 1.0, 10.0}) ref = std::max(ref, std::abs(integrand(t * scale)));
  ref *= scale;
  if (ref == 0.0 || !std::isfinite(ref)) return {};

  const std::array<double, 3> knots{omega_a, omega_b, field_scale};
  auto r = quad::integrate_semi_infinite([&](double xi) { return integrand(xi) / ref; }, scale,
                                         tol, knots);
  const double factor = -ref / two_pi;
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

}  // namespace

SelfEnergy sigma_gg(const TwoLevelAtom& a, const TwoLevelAtom& b, const PairCoupling& coupling,
                    const quad::Tolerance& tol) {
  require_state(a, AtomState::ground, "sigma_gg: atom A must be in the ground state");
  require_state(b, AtomState::ground, "sigma_gg: atom B must be in the ground state");

  auto alpha_a = [&a](cplx w) { return alpha_feynman_sharp(AtomState::ground, a.omega, w); };
  auto alpha_b = [&b](cplx w) { return alpha_feynman_sharp(AtomState::ground, b.omega, w); };
  const auto r = rotated_two_body(alpha_a, alpha_b, a.omega, b.omega, coupling, tol);

  SelfEnergy out;
  out.total = cplx{r.value.real(), 0.0};
  out.nonresonant = out.total;
  out.error_estimate = r.error_estimate;
  return out;
}

SelfEnergy sigma_gg(const TwoLevelAtom& a, const TwoLevelAtom& b, const Medium& medium,
                    Orientation orientation, const quad::Tolerance& tol) {
  return sigma_gg(a, b, FreeSpaceCoupling(a, b, medium, orientation), tol);
}

double resonant_broadening(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                           const SelfEnergyOptions& options) {
  if (options.broadening < 0.0) throw DomainError("broadening must be >= 0");
  if (options.broadening > 0.0) return options.broadening;
  const double gamma_ab = 0.5 * (a_star.linewidth.value_or(0.0) + b.linewidth.value_or(0.0));
  if (gamma_ab < 0.0) throw DomainError("linewidths must be >= 0");
  return gamma_ab;
}

namespace {

struct GeSetup {
  TwoLevelAtom a_ground;
  double eps = 0.0;
};

GeSetup prepare_ge(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                   const SelfEnergyOptions& options) {
  require_state(a_star, AtomState::excited, "atom A must be in the excited state");
  require_state(b, AtomState::ground, "atom B must be in the ground state");
  GeSetup s;
  s.eps = resonant_broadening(a_star, b, options);
  if (s.eps == 0.0 && a_star.omega == b.omega) {
    throw SingularityError(
        "exact degeneracy omega_A == omega_B with sharp lines: the resonant term is a "
        "principal-value singularity; supply linewidths or a broadening");
  }
  s.a_ground = a_star;
  s.a_ground.state = AtomState::ground;
  return s;
}

cplx alpha_b_retarded(const TwoLevelAtom& b, double omega, double eps) {
  return eps > 0.0 ? alpha_retarded(AtomState::ground, b.omega, omega, eps)
                   : alpha_retarded_sharp(AtomState::ground, b.omega, omega);
}

cplx alpha_b_feynman(const TwoLevelAtom& b, double omega, double eps) {
  return eps > 0.0 ? alpha_feynman(AtomState::ground, b.omega, omega, eps)
                   : alpha_feynman_sharp(AtomState::ground, b.omega, omega);
}

}  // namespace

SelfEnergy sigma_ge_keldysh(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                            const PairCoupling& coupling, const SelfEnergyOptions& options) {
  const auto setup = prepare_ge(a_star, b, options);
  const auto gg = sigma_gg(setup.a_ground, b, coupling, options.tol);

  SelfEnergy out;
  out.nonresonant = -gg.total;  // alpha_R^e = -alpha_R^g
  out.resonant = -alpha_b_retarded(b, a_star.omega, setup.eps) * coupling.modulus_squared(a_star.omega);
  out.total = out.nonresonant + out.resonant;
  out.error_estimate = gg.error_estimate;
  return out;
}

SelfEnergy sigma_ge_keldysh_expanded(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                                     const PairCoupling& coupling,
                                     const SelfEnergyOptions& options) {
  const auto setup = prepare_ge(a_star, b, options);
  const double eps = setup.eps;

  // alpha_R^{gB} alpha_R^{eA} D_R D_R: regular in the upper right quadrant.
  auto alpha_a = [&a_star](cplx w) {
    return alpha_retarded_sharp(AtomState::excited, a_star.omega, w);
  };
  auto alpha_b = [&b](cplx w) { return alpha_retarded_sharp(AtomState::ground, b.omega, w); };
  const auto line1 = rotated_two_body(alpha_a, alpha_b, a_star.omega, b.omega, coupling, options.tol);

  // i Int dw/2pi alpha_R^{gB}(w) X(w) alpha_12^{eA}(w) = (i/2pi) * 2 pi i w X(omega_A)
  const Polarizability alpha12 = alpha_offdiagonal(AtomState::excited, a_star.omega);
  auto resonant_line = [&](auto field_product) {
    return I / two_pi * alpha12.resonant_integral([&](double w) {
             return alpha_b_retarded(b, w, eps) * field_product(w);
           });
  };
  const cplx line2 = resonant_line([&](double w) { return coupling.squared(w); });
  const cplx line3 = -resonant_line([&](double w) { return coupling.squared(w); });
  const cplx line4 = resonant_line([&](double w) { return cplx{coupling.modulus_squared(w), 0.0}; });

  SelfEnergy out;
  out.nonresonant = cplx{line1.value.real(), 0.0};
  out.oscillating = line2 + line3;
  out.resonant = line4;
  out.total = out.nonresonant + out.oscillating + out.resonant;
  out.error_estimate = line1.error_estimate;
  return out;
}

SelfEnergy sigma_ge_feynman(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                            const PairCoupling& coupling, const SelfEnergyOptions& options) {
  const auto setup = prepare_ge(a_star, b, options);
  const auto gg = sigma_gg(setup.a_ground, b, coupling, options.tol);

  SelfEnergy out;
  out.nonresonant = -gg.total;
  out.oscillating = -alpha_b_feynman(b, a_star.omega, setup.eps) * coupling.squared(a_star.omega);
  out.total = out.nonresonant + out.oscillating;
  out.error_estimate = gg.error_estimate;
  return out;
}

SelfEnergy sigma_ge_feynman_contour(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                                    const PairCoupling& coupling, const quad::Tolerance& tol) {
  prepare_ge(a_star, b, SelfEnergyOptions{tol, 0.0});
  const double wa = a_star.omega;
  const double wb = b.omega;

  auto integrand = [&](cplx w) {
    return I / two_pi * alpha_feynman_sharp(AtomState::ground, wb, w) *
           alpha_feynman_sharp(AtomState::excited, wa, w) * coupling.squared(w);
  };
  // alpha_11^{eA} ~ 1/(w - omega_A - i0+) near its upper-right pole.
  const quad::Pole excited_pole{
      cplx{wa, 0.0},
      I / two_pi * alpha_feynman_sharp(AtomState::ground, wb, wa) * coupling.squared(wa), +1};
  const quad::Pole ground_poles[] = {{cplx{wb, 0.0}, cplx{}, -1}, {cplx{-wb, 0.0}, cplx{}, +1}};
  std::vector<quad::Pole> poles{excited_pole, ground_poles[0], ground_poles[1]};

  const double scale = std::min({coupling.decay_scale(), wa, wb});
  const auto spec = quad::wick_rotate(integrand, poles, scale, tol);

  // Imaginary-axis part normalised like the other rotated integrals.
  const auto rotated = rotated_two_body(
      [wb](cplx w) { return alpha_feynman_sharp(AtomState::ground, wb, w); },
      [wa](cplx w) { return alpha_feynman_sharp(AtomState::excited, wa, w); }, wa, wb, coupling, tol);
  cplx residues{};
  for (const auto& r : spec.residues) residues += two_pi * I * r.weight * r.residue;

  SelfEnergy out;
  out.nonresonant = cplx{rotated.value.real(), 0.0};
  out.oscillating = residues;
  out.total = out.nonresonant + out.oscillating;
  out.error_estimate = rotated.error_estimate;
  return out;
}

double gamma_spontaneous(const TwoLevelAtom& a_star, const Medium& medium) {
  require_state(a_star, AtomState::excited, "gamma_spontaneous: atom must be excited");
  const Eigen::Matrix3d im_g = green_coincidence_im(a_star.omega, medium);
  return 2.0 * a_star.dipole.dot(im_g * a_star.dipole);
}

double gamma_thermal_absorption(const TwoLevelAtom& b, const Medium& medium, double temperature) {
  require_state(b, AtomState::ground, "gamma_thermal_absorption: atom must be in the ground state");
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  // Thermal part of D_11: i (coth - 1) Im D_R = 2i nbar Im D_R. The pole of alpha_11^g at
  // omega_B contributes i pi delta(omega - omega_B) to the integrand of Sigma.
  const double im_d = b.dipole.dot(green_coincidence_im(b.omega, medium) * b.dipole);
  const double nbar = occupation(b.omega, temperature);
  const cplx sigma = I / two_pi * (I * 2.0 * nbar * im_d) * (I * pi);
  return -2.0 * sigma.imag();
}

}  // namespace casimir
