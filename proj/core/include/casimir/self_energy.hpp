#pragma once

#include "casimir/coupling.hpp"
#include "casimir/medium.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Sigma = shift - i width / 2, with a labelled breakdown that sums to `total`.
struct SelfEnergy {
  cplx total{};
  cplx nonresonant{};
  cplx resonant{};
  cplx oscillating{};
  /// Quadrature error estimate of the nonresonant integral.
  double error_estimate = 0.0;

  double shift() const { return total.real(); }
  double width() const { return -2.0 * total.imag(); }
};

struct SelfEnergyOptions {
  quad::Tolerance tol{};
  /// Broadening of alpha^{gB} in the resonant term. 0 selects the linewidths of the atoms,
  /// eps = (gamma_A + gamma_B)/2, or sharp lines when neither atom carries one.
  double broadening = 0.0;
};

/// Ground-ground two-body potential,
///   Sigma^gg = -(1/2 pi) Int_0^inf d xi alpha_A(i xi) alpha_B(i xi) [D_R(i xi; r_A, r_B)]^2,
/// the Wick-rotated form of i Int_0^inf d omega/2 pi alpha_11 alpha_11 D_11 D_11. Real; width 0.
SelfEnergy sigma_gg(const TwoLevelAtom& a, const TwoLevelAtom& b, const PairCoupling& coupling,
                    const quad::Tolerance& tol = {});
SelfEnergy sigma_gg(const TwoLevelAtom& a, const TwoLevelAtom& b, const Medium& medium,
                    Orientation orientation = Orientation::fixed, const quad::Tolerance& tol = {});

/// Ground atom B next to excited atom A, equilibrated (Keldysh) result:
///   Sigma^ge = -Sigma^gg - alpha_R^{gB}(omega_A) |D_R(omega_A; r_B, r_A)|^2.
/// nonresonant = -Sigma^gg, resonant = the FRET term.
SelfEnergy sigma_ge_keldysh(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                            const PairCoupling& coupling, const SelfEnergyOptions& options = {});

/// Same quantity from the four-line retarded/advanced expansion: the alpha_R^g alpha_R^e
/// line integrated on the imaginary axis with the excited-state alpha_R, and the three
/// alpha_12 lines from its resonance weight. The two cancelling lines land in `oscillating`.
SelfEnergy sigma_ge_keldysh_expanded(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                                     const PairCoupling& coupling,
                                     const SelfEnergyOptions& options = {});

/// Feynman-ordered (equilibrium) result -Sigma^gg + Delta Sigma with the spatially
/// oscillating Delta Sigma = -alpha^{gB}(omega_A) [D_R(omega_A; r_B, r_A)]^2 in `oscillating`.
SelfEnergy sigma_ge_feynman(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                            const PairCoupling& coupling, const SelfEnergyOptions& options = {});

/// The two Feynman diagrams evaluated directly: i Int dw/2pi alpha_11^{gB} alpha_11^{eA} D^2
/// rotated onto the imaginary axis, picking up the residue of the excited-state pole.
/// Sharp lines only.
SelfEnergy sigma_ge_feynman_contour(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                                    const PairCoupling& coupling, const quad::Tolerance& tol = {});

/// Gamma_0 = 2 d.Im G(omega_A; r_A, r_A).d = (4/3)|d|^2 omega_A^3 n / c^3.
double gamma_spontaneous(const TwoLevelAtom& a_star, const Medium& medium);

/// Absorption of thermal photons by a ground-state atom: width of its single-atom
/// self-energy, picked from the pole of alpha_11^g at omega_B against the thermal part
/// of D_11. Equals nbar(omega_B) Gamma_0(omega_B); exactly 0 at T = 0.
double gamma_thermal_absorption(const TwoLevelAtom& b, const Medium& medium, double temperature);

/// Broadening used for the resonant term (see SelfEnergyOptions::broadening).
double resonant_broadening(const TwoLevelAtom& a_star, const TwoLevelAtom& b,
                           const SelfEnergyOptions& options);

}  // namespace casimir
