#include "casimir/coupling.hpp"

#include "casimir/error.hpp"

namespace casimir {

FreeSpaceCoupling::FreeSpaceCoupling(const TwoLevelAtom& a, const TwoLevelAtom& b, Medium medium,
                                     Orientation orientation)
    : r_a_(a.position),
      r_b_(b.position),
      d_a_(a.dipole),
      d_b_(b.dipole),
      medium_(std::move(medium)),
      orientation_(orientation),
      distance_((a.position - b.position).norm()) {
  a.validate();
  b.validate();
  if (distance_ == 0.0) throw CoincidentPointsError("the two atoms occupy the same position");
}

DyadicGreen FreeSpaceCoupling::tensor(cplx omega) const {
  return green_retarded(omega, r_b_, r_a_, medium_);
}

cplx FreeSpaceCoupling::contracted(cplx omega) const {
  const DyadicGreen g = tensor(omega);
  if (orientation_ == Orientation::isotropic) {
    return d_a_.norm() * d_b_.norm() * g.trace() / 3.0;
  }
  return contract(d_b_, g, d_a_);
}

cplx FreeSpaceCoupling::squared(cplx omega) const {
  const DyadicGreen g = tensor(omega);
  if (orientation_ == Orientation::isotropic) {
    // <d_i d_k> = |d|^2 delta_ik / 3 for each atom independently
    return d_a_.squaredNorm() * d_b_.squaredNorm() / 9.0 * g.cwiseProduct(g).sum();
  }
  const cplx d = contract(d_b_, g, d_a_);
  return d * d;
}

double FreeSpaceCoupling::modulus_squared(double omega) const {
  const DyadicGreen g = tensor(omega);
  if (orientation_ == Orientation::isotropic) {
    return d_a_.squaredNorm() * d_b_.squaredNorm() / 9.0 * g.cwiseAbs2().sum();
  }
  return std::norm(contract(d_b_, g, d_a_));
}

double FreeSpaceCoupling::decay_scale() const {
  return medium_.light_speed() / (2.0 * distance_);
}

double FreeSpaceCoupling::kr(double omega) const {
  return std::abs(medium_.wave_number(omega)) * distance_;
}

}  // namespace casimir
