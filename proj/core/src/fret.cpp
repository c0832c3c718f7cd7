#include "casimir/fret.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "casimir/error.hpp"

namespace casimir {

namespace {

void check(const Lineshape& l) {
  if (!(l.width >= 0.0)) throw DomainError("lineshape width must be >= 0");
  if (!std::isfinite(l.center)) throw DomainError("lineshape centre must be finite");
}

bool is_sharp(const Lineshape& l) { return l.kind == Lineshape::Kind::delta || l.width == 0.0; }

}  // namespace

Lineshape Lineshape::delta(double center) { return {Kind::delta, center, 0.0}; }

Lineshape Lineshape::lorentzian(double center, double fwhm) {
  Lineshape l{Kind::lorentzian, center, fwhm};
  check(l);
  return l;
}

Lineshape Lineshape::of(const TwoLevelAtom& atom) {
  const double gamma = atom.linewidth.value_or(0.0);
  return gamma > 0.0 ? lorentzian(atom.omega, gamma) : delta(atom.omega);
}

double Lineshape::operator()(double omega) const {
  if (is_sharp(*this)) throw DomainError("delta lineshape has no pointwise density");
  const double hw = 0.5 * width;
  const double x = omega - center;
  return hw / (pi * (x * x + hw * hw));
}

SpectralOverlap spectral_overlap(const Lineshape& a, const Lineshape& b) {
  check(a);
  check(b);
  if (is_sharp(a) && is_sharp(b)) {
    return a.center == b.center ? SpectralOverlap{1.0, true} : SpectralOverlap{0.0, false};
  }
  if (is_sharp(a)) return {b(a.center), false};
  if (is_sharp(b)) return {a(b.center), false};
  // Two Lorentzians convolve into one with half width (gamma_a + gamma_b)/2.
  const double gamma_ab = 0.5 * (a.width + b.width);
  const double detuning = a.center - b.center;
  return {gamma_ab / (pi * (detuning * detuning + gamma_ab * gamma_ab)), false};
}

FretRate fret_rate(const TwoLevelAtom& a_star, const TwoLevelAtom& b, const Lineshape& donor,
                   const Lineshape& acceptor, const PairCoupling& coupling) {
  a_star.validate();
  b.validate();
  if (a_star.state != AtomState::excited) throw DomainError("fret_rate: donor must be excited");
  if (b.state != AtomState::ground) throw DomainError("fret_rate: acceptor must be in the ground state");

  const auto overlap = spectral_overlap(donor, acceptor);
  FretRate out;
  out.coupling = coupling.modulus_squared(donor.center);
  out.rate = two_pi * out.coupling * overlap.value;
  out.spectral_density = overlap.spectral_density;
  return out;
}

double fret_rate_windowed(const Lineshape& donor, const Lineshape& acceptor,
                          const PairCoupling& coupling, double window,
                          const quad::Tolerance& tol) {
  check(donor);
  check(acceptor);
  if (is_sharp(donor) || is_sharp(acceptor)) {
    throw DomainError("fret_rate_windowed needs two Lorentzian lines");
  }
  if (!(window > 0.0)) throw DomainError("window must be > 0");
  const double mid = 0.5 * (donor.center + acceptor.center);
  const double lo = std::max(mid - window, 1e-12 * mid);
  const double hi = mid + window;
  const std::array<double, 2> knots{donor.center, acceptor.center};
  const double ref = coupling.modulus_squared(donor.center) * spectral_overlap(donor, acceptor).value;
  if (ref == 0.0) return 0.0;
  auto r = quad::integrate(
      [&](double w) {
        return cplx{donor(w) * acceptor(w) * coupling.modulus_squared(w) / ref, 0.0};
      },
      lo, hi, tol, knots);
  return two_pi * ref * r.value.real();
}

}  // namespace casimir
