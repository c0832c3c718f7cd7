#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir::quad {

struct Tolerance {
  double abs = 1e-14;
  double rel = 1e-9;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Raised when the evaluation budget is exhausted or the integrand is not finite.
/// Carries the estimate reached so far.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : Error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

/// Global adaptive Gauss-Kronrod (10/21) on [a, b]. Interior breakpoints split
/// the initial partition (use them at near-singular points).
QuadratureResult integrate(const RealIntegrand& f, double a, double b, const Tolerance& tol = {},
                           std::span<const double> breakpoints = {});

/// Integral over [lower, inf) through x = lower + s t / (1 - t). `decay_scale` (s > 0)
/// is the distance over which the integrand falls off.
QuadratureResult integrate_semi_infinite(const RealIntegrand& f, double decay_scale,
                                         const Tolerance& tol = {},
                                         std::span<const double> breakpoints = {},
                                         double lower = 0.0);

/// Integral over the whole real line, split at `center`.
QuadratureResult integrate_real_line(const RealIntegrand& f, double center, double scale,
                                     const Tolerance& tol = {},
                                     std::span<const double> breakpoints = {});

/// Abel-regularised real-axis integral over [0, inf): [0, cut] along the real axis, then
/// the tail deformed onto cut + i y, y >= 0. Valid when f has no singularities with
/// Re > cut in the first quadrant and decays as Im omega grows.
QuadratureResult integrate_real_axis_regularized(const ComplexIntegrand& f, double cut,
                                                 double decay_scale, const Tolerance& tol = {},
                                                 std::span<const double> breakpoints = {});

enum class Axis { real_positive, imaginary_positive };

/// Pole of the integrand. `infinitesimal` = +1 means location + i0+, -1 means location - i0+.
struct Pole {
  cplx location;
  cplx residue;
  int infinitesimal = 0;
};

/// A residue picked up when rotating the contour; contributes 2 pi i * weight * residue.
struct PickedResidue {
  cplx location;
  cplx residue;
  double weight = 1.0;
};

struct ContourSpec {
  Axis axis = Axis::imaginary_positive;
  std::vector<PickedResidue> residues;
  double decay_scale = 1.0;
  Tolerance tol{};
};

/// Rotate Int_0^inf d omega f(omega) onto the positive imaginary axis. Declared poles in
/// the open first quadrant (or on the positive real axis with +i0+) are picked up with
/// weight 1; poles on the positive imaginary axis get weight 1/2 (principal value plus half
/// the residue, evaluated by integrate_contour as a small detour around the pole). Spot-checks that |omega f| decays on a large quarter circle.
ContourSpec wick_rotate(const ComplexIntegrand& f, std::span<const Pole> poles,
                        double decay_scale, const Tolerance& tol = {});

/// Evaluate the contour described by `spec`, including residue contributions.
QuadratureResult integrate_contour(const ComplexIntegrand& f, const ContourSpec& spec);

}  // namespace casimir::quad
