#pragma once

#include "casimir/constants.hpp"
#include "casimir/green.hpp"
#include "casimir/medium.hpp"
#include "casimir/polarizability.hpp"

namespace casimir {

enum class Orientation { fixed, isotropic };

/// Dipole-contracted photon exchange between atom A and atom B, the only way the
/// self-energies see the field. Implementations must be pure and safe to call concurrently.
class PairCoupling {
 public:
  virtual ~PairCoupling() = default;

  /// (d_B . D_R(omega; r_B, r_A) . d_A)^2, orientation-averaged where applicable.
  /// Must be analytic in the upper half-plane.
  virtual cplx squared(cplx omega) const = 0;
  /// |d_B . D_R(omega; r_B, r_A) . d_A|^2 at real omega, orientation-averaged where applicable.
  virtual double modulus_squared(double omega) const = 0;
  /// Distance along the imaginary axis over which squared(i xi) falls off.
  virtual double decay_scale() const = 0;
  /// Dimensionless separation k(omega) r; 0 where no length is defined.
  virtual double kr(double /*omega*/) const { return 0.0; }
};

/// Free-space (homogeneous medium) coupling between two atoms.
class FreeSpaceCoupling final : public PairCoupling {
 public:
  /// Throws CoincidentPointsError if the atoms share a position.
  FreeSpaceCoupling(const TwoLevelAtom& a, const TwoLevelAtom& b, Medium medium,
                    Orientation orientation = Orientation::fixed);

  cplx squared(cplx omega) const override;
  double modulus_squared(double omega) const override;
  double decay_scale() const override;
  double kr(double omega) const override;

  DyadicGreen tensor(cplx omega) const;
  /// d_B . G . d_A for fixed orientation; for isotropic averaging this is |d_A||d_B| tr G / 3.
  cplx contracted(cplx omega) const;

  double distance() const noexcept { return distance_; }
  const Medium& medium() const noexcept { return medium_; }
  Orientation orientation() const noexcept { return orientation_; }

 private:
  Vec3 r_a_;
  Vec3 r_b_;
  Vec3 d_a_;
  Vec3 d_b_;
  Medium medium_;
  Orientation orientation_;
  double distance_;
};

}  // namespace casimir
