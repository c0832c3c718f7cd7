#pragma once

#include "casimir/coupling.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Unit-area emission / absorption line. `width` is the full width at half maximum.
struct Lineshape {
  enum class Kind { delta, lorentzian };

  Kind kind = Kind::delta;
  double center = 0.0;
  double width = 0.0;

  static Lineshape delta(double center);
  static Lineshape lorentzian(double center, double fwhm);
  /// Delta line for a sharp atom, Lorentzian with the atom's linewidth otherwise.
  static Lineshape of(const TwoLevelAtom& atom);

  /// Density at omega. Not defined for a delta line.
  double operator()(double omega) const;
};

/// Int d omega L_a(omega) L_b(omega). For two delta lines at the same centre the overlap is
/// itself a delta function; `spectral_density` is then set and `value` is its coefficient.
struct SpectralOverlap {
  double value = 0.0;
  bool spectral_density = false;
};

SpectralOverlap spectral_overlap(const Lineshape& a, const Lineshape& b);

struct FretRate {
  double rate = 0.0;
  /// |d_B . D_R(omega_A; r_B, r_A) . d_A|^2 at the donor line centre.
  double coupling = 0.0;
  /// rate is the coefficient of delta(omega_B - omega_A) (two sharp, degenerate lines).
  bool spectral_density = false;
};

/// Gamma_FRET = 2 pi |D_R(omega_A)|^2 Int L_A L_B with the coupling evaluated at the donor
/// line centre.
FretRate fret_rate(const TwoLevelAtom& a_star, const TwoLevelAtom& b, const Lineshape& donor,
                   const Lineshape& acceptor, const PairCoupling& coupling);

/// 2 pi Int L_A(w) L_B(w) |D_R(w)|^2 over centre +- window with the frequency-dependent
/// coupling. Both lines must be Lorentzian. Lorentzian tails make the untruncated
/// integral diverge in the far zone, hence the explicit window.
double fret_rate_windowed(const Lineshape& donor, const Lineshape& acceptor,
                          const PairCoupling& coupling, double window,
                          const quad::Tolerance& tol = {});

}  // namespace casimir
