#include "casimir/polarizability.hpp"

#include <cmath>

#include "casimir/error.hpp"

namespace casimir {

namespace {

void require_broadening(double eps) {
  if (!(eps > 0.0)) throw DomainError("broadening eps must be > 0");
}

void require_frequency(double omega_n) {
  if (!(omega_n > 0.0)) throw DomainError("transition frequency must be > 0");
}

double sign_of(AtomState state) { return state == AtomState::ground ? 1.0 : -1.0; }

cplx checked_inverse(cplx z) {
  if (z == cplx{}) throw SingularityError("polarizability evaluated on its pole");
  return 1.0 / z;
}

}  // namespace

void TwoLevelAtom::validate() const {
  require_frequency(omega);
  if (!dipole.allFinite()) throw DomainError("transition dipole must be finite");
  if (!position.allFinite()) throw DomainError("atom position must be finite");
  if (linewidth && !(*linewidth >= 0.0)) throw DomainError("linewidth must be >= 0");
}

cplx AtomPropagator::operator()(cplx omega, double eps) const {
  return 1.0 / (omega - pole + I * eps);
}

cplx Polarizability::resonant_integral(const std::function<cplx(double)>& f) const {
  if (!resonance) return {};
  return two_pi * I * resonance->weight * f(resonance->center);
}

cplx alpha_feynman(AtomState state, double omega_n, double omega, double eps) {
  require_frequency(omega_n);
  require_broadening(eps);
  if (state == AtomState::ground) {
    return 1.0 / cplx{omega_n - omega, -eps} + 1.0 / cplx{omega_n + omega, -eps};
  }
  return -1.0 / cplx{omega_n + omega, eps} - 1.0 / cplx{omega_n - omega, eps};
}

cplx alpha_retarded(AtomState state, double omega_n, cplx omega, double eps) {
  require_frequency(omega_n);
  require_broadening(eps);
  const double wn = sign_of(state) * omega_n;
  // excited form with w_n -> -w_n for the ground state
  return -(1.0 / (-wn + omega + I * eps) + 1.0 / (-wn - omega - I * eps));
}

cplx alpha_offdiagonal_broadened(AtomState state, double omega_n, double omega, double eps) {
  require_frequency(omega_n);
  require_broadening(eps);
  const double center = state == AtomState::excited ? omega_n : -omega_n;
  const double x = omega - center;
  return cplx{0.0, 2.0 * eps / (x * x + eps * eps)};
}

Polarizability alpha_offdiagonal(AtomState state, double omega_n) {
  require_frequency(omega_n);
  Polarizability p;
  if (state == AtomState::excited) p.resonance = ResonanceWeight{omega_n, 1.0};
  return p;
}

cplx alpha_feynman_sharp(AtomState state, double omega_n, cplx omega) {
  require_frequency(omega_n);
  const double s = sign_of(state);
  return s * (checked_inverse(omega_n - s * omega) + checked_inverse(omega_n + s * omega));
}

cplx alpha_retarded_sharp(AtomState state, double omega_n, cplx omega) {
  require_frequency(omega_n);
  const double s = sign_of(state);
  return s * (checked_inverse(omega_n - omega) + checked_inverse(omega_n + omega));
}

}  // namespace casimir
