#pragma once

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "casimir/constants.hpp"

namespace casimir {

enum class AtomState { ground, excited };

/// Point-like two-level atom. Only the Bohr frequency omega = e_e - e_g enters.
struct TwoLevelAtom {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double omega = 1.0;
  Eigen::Vector3d dipole = Eigen::Vector3d::UnitX();
  AtomState state = AtomState::ground;
  std::optional<double> linewidth;

  /// Throws DomainError unless omega > 0, the dipole is finite and linewidth >= 0.
  void validate() const;
};

/// Bare propagator 1/(omega - pole + i eps) of a level at energy `pole`.
struct AtomPropagator {
  double pole = 0.0;

  cplx operator()(cplx omega, double eps) const;
  /// Location of the simple pole for broadening eps (lower half-plane).
  cplx pole_location(double eps) const { return {pole, -eps}; }
};

/// w * 2 pi i * delta(omega - center)
struct ResonanceWeight {
  double center = 0.0;
  cplx weight{1.0, 0.0};
};

/// Rational (i eps-broadened) part plus an explicit delta-function part.
struct Polarizability {
  std::function<cplx(double)> regular;
  std::optional<ResonanceWeight> resonance;

  bool is_zero() const { return !regular && !resonance; }
  cplx regular_at(double omega) const { return regular ? regular(omega) : cplx{}; }
  /// Int d omega alpha(omega) f(omega) over the delta part: 2 pi i w f(center).
  cplx resonant_integral(const std::function<cplx(double)>& f) const;
};

/// Feynman-ordered alpha_11 (eps > 0):
///   ground:   1/(w_n - w - i eps) + 1/(w_n + w - i eps)
///   excited: -1/(w_n + w + i eps) - 1/(w_n - w + i eps)
cplx alpha_feynman(AtomState state, double omega_n, double omega, double eps);

/// Retarded alpha_R (eps > 0), poles in the lower half-plane only:
///   excited: -[1/(w_n + w + i eps) + 1/(w_n - w - i eps)], ground via w_n -> -w_n.
cplx alpha_retarded(AtomState state, double omega_n, cplx omega, double eps);

/// alpha_12 in broadened form, alpha_11 - alpha_R. Lorentzian 2i eps/((w -+ w_n)^2 + eps^2)
/// centred at +w_n (excited) or -w_n (ground).
cplx alpha_offdiagonal_broadened(AtomState state, double omega_n, double omega, double eps);

/// alpha_12 on positive frequencies: 2 pi i delta(omega - w_n) for the excited atom,
/// identically zero for the ground state.
Polarizability alpha_offdiagonal(AtomState state, double omega_n);

/// eps -> 0 limits at arbitrary complex frequency (off the poles). On the real axis these
/// are the principal values; they coincide with alpha_R for omega > 0 in the ground state.
/// Throws SingularityError at a pole.
cplx alpha_feynman_sharp(AtomState state, double omega_n, cplx omega);
cplx alpha_retarded_sharp(AtomState state, double omega_n, cplx omega);

}  // namespace casimir
