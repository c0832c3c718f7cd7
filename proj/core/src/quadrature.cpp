#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace casimir::quad {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule. Boost stores the
// non-negative abscissas; the Gauss nodes sit at the odd indices.
struct KronrodRule {
  std::array<double, 11> x{};
  std::array<double, 11> wk{};
  std::array<double, 5> wg{};

  KronrodRule() {
    using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
    using g = boost::math::quadrature::gauss<double, 10>;
    std::copy_n(gk::abscissa().begin(), 11, x.begin());
    std::copy_n(gk::weights().begin(), 11, wk.begin());
    std::copy_n(g::weights().begin(), 5, wg.begin());
  }
};

const KronrodRule& rule() {
  static const KronrodRule r;
  return r;
}

struct Segment {
  double a = 0.0;
  double b = 0.0;
  cplx value{};
  double error = 0.0;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate_segment(const RealIntegrand& f, double a, double b, std::size_t& evaluations) {
  const auto& r = rule();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const cplx fc = f(centre);
  cplx kronrod = r.wk[0] * fc;
  cplx gauss{};
  double resabs = r.wk[0] * std::abs(fc);
  for (std::size_t j = 1; j < r.x.size(); ++j) {
    const double dx = half * r.x[j];
    const cplx f1 = f(centre - dx);
    const cplx f2 = f(centre + dx);
    kronrod += r.wk[j] * (f1 + f2);
    resabs += r.wk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += r.wg[(j - 1) / 2] * (f1 + f2);
  }
  evaluations += 21;

  Segment s{a, b, kronrod * half, 0.0};
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(half);
  s.error = std::max(std::abs((kronrod - gauss) * half), roundoff);
  if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag()) || !std::isfinite(s.error)) {
    std::ostringstream msg;
    msg << "integrand not finite on [" << a << ", " << b << "]";
    throw QuadratureError(msg.str(), QuadratureResult{cplx{}, std::numeric_limits<double>::infinity(),
                                                      evaluations});
  }
  return s;
}

bool within_tolerance(double error, cplx value, const Tolerance& tol) {
  return error <= std::max(tol.abs, tol.rel * std::abs(value));
}

QuadratureResult sum_segments(const std::vector<Segment>& segments, std::size_t evaluations) {
  // Sum in order of position; deterministic regardless of refinement history.
  QuadratureResult out;
  out.evaluations = evaluations;
  for (const auto& s : segments) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  return out;
}

QuadratureResult adaptive(const RealIntegrand& f, std::vector<double> knots, const Tolerance& tol) {
  if (!(tol.abs > 0.0) || !(tol.rel > 0.0)) throw DomainError("quadrature tolerances must be > 0");

  std::size_t evaluations = 0;
  std::priority_queue<Segment> queue;
  cplx total{};
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] <= knots[i]) continue;
    auto s = evaluate_segment(f, knots[i], knots[i + 1], evaluations);
    total += s.value;
    total_error += s.error;
    queue.push(s);
  }

  auto collect = [&queue, evaluations]() {
    auto copy = queue;
    std::vector<Segment> segments;
    segments.reserve(copy.size());
    while (!copy.empty()) {
      segments.push_back(copy.top());
      copy.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a; });
    return sum_segments(segments, evaluations);
  };

  while (!queue.empty()) {
    if (within_tolerance(total_error, total, tol)) {
      auto result = collect();
      if (within_tolerance(result.error_estimate, result.value, tol)) return result;
      total = result.value;
      total_error = result.error_estimate;
      if (within_tolerance(total_error, total, tol)) return result;
    }
    if (evaluations + 42 > tol.max_evaluations) {
      throw QuadratureError("quadrature evaluation budget exhausted", collect());
    }
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("quadrature interval cannot be subdivided further", collect());
    }
    queue.pop();
    auto left = evaluate_segment(f, worst.a, mid, evaluations);
    auto right = evaluate_segment(f, mid, worst.b, evaluations);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  return QuadratureResult{cplx{}, 0.0, evaluations};
}

std::vector<double> knots_between(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> knots{a};
  for (double p : breakpoints) {
    if (p > a && p < b) knots.push_back(p);
  }
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

}  // namespace

QuadratureResult integrate(const RealIntegrand& f, double a, double b, const Tolerance& tol,
                           std::span<const double> breakpoints) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate(f, b, a, tol, breakpoints);
    r.value = -r.value;
    return r;
  }
  return adaptive(f, knots_between(a, b, breakpoints), tol);
}

QuadratureResult integrate_semi_infinite(const RealIntegrand& f, double decay_scale,
                                         const Tolerance& tol, std::span<const double> breakpoints,
                                         double lower) {
  if (!(decay_scale > 0.0)) throw DomainError("decay_scale must be > 0");
  const double s = decay_scale;
  auto mapped = [&f, s, lower](double t) -> cplx {
    const double one_minus = 1.0 - t;
    const double x = lower + s * t / one_minus;
    const cplx v = f(x);
    if (v == cplx{}) return v;
    return v * (s / (one_minus * one_minus));
  };
  std::vector<double> tb;
  tb.reserve(breakpoints.size());
  for (double x : breakpoints) {
    if (x > lower) tb.push_back((x - lower) / (x - lower + s));
  }
  return adaptive(mapped, knots_between(0.0, 1.0, tb), tol);
}

QuadratureResult integrate_real_line(const RealIntegrand& f, double center, double scale,
                                     const Tolerance& tol, std::span<const double> breakpoints) {
  std::vector<double> right;
  std::vector<double> left;
  for (double x : breakpoints) {
    if (x > center) right.push_back(x);
    if (x < center) left.push_back(2.0 * center - x);
  }
  Tolerance half = tol;
  half.abs = 0.5 * tol.abs;
  auto upper = integrate_semi_infinite(f, scale, half, right, center);
  auto reflected = [&f, center](double x) { return f(2.0 * center - x); };
  half.max_evaluations = tol.max_evaluations > upper.evaluations ? tol.max_evaluations - upper.evaluations : 0;
  auto lower = integrate_semi_infinite(reflected, scale, half, left, center);
  return QuadratureResult{upper.value + lower.value, upper.error_estimate + lower.error_estimate,
                          upper.evaluations + lower.evaluations};
}

QuadratureResult integrate_real_axis_regularized(const ComplexIntegrand& f, double cut,
                                                 double decay_scale, const Tolerance& tol,
                                                 std::span<const double> breakpoints) {
  if (!(cut > 0.0)) throw DomainError("cut must be > 0");
  Tolerance half = tol;
  half.abs = 0.5 * tol.abs;
  auto body = integrate([&f](double x) { return f(cplx{x, 0.0}); }, 0.0, cut, half, breakpoints);
  auto tail = integrate_semi_infinite([&f, cut](double y) { return I * f(cplx{cut, y}); },
                                     decay_scale, half);
  return QuadratureResult{body.value + tail.value, body.error_estimate + tail.error_estimate,
                          body.evaluations + tail.evaluations};
}

ContourSpec wick_rotate(const ComplexIntegrand& f, std::span<const Pole> poles, double decay_scale,
                        const Tolerance& tol) {
  if (!(decay_scale > 0.0)) throw DomainError("decay_scale must be > 0");
  ContourSpec spec;
  spec.axis = Axis::imaginary_positive;
  spec.decay_scale = decay_scale;
  spec.tol = tol;

  const double corner_tol = std::max(tol.abs, 1e-12 * decay_scale);
  double radius = decay_scale;
  for (const auto& p : poles) {
    const double re = p.location.real();
    const double im = p.location.imag();
    if (std::abs(p.location) <= corner_tol) {
      throw DegenerateContourError("pole at the contour corner omega = 0");
    }
    radius = std::max(radius, std::abs(p.location));
    const bool upper = im > 0.0 || (im == 0.0 && p.infinitesimal > 0);
    if (re > 0.0 && upper) {
      spec.residues.push_back({p.location, p.residue, 1.0});
    } else if (re == 0.0 && im > 0.0) {
      spec.residues.push_back({p.location, p.residue, 0.5});
    }
  }

  // Closing arc: |omega f(omega)| must shrink as the radius grows.
  auto arc_size = [&f](double r) {
    double m = 0.0;
    for (double theta : {pi / 8.0, pi / 4.0, 3.0 * pi / 8.0}) {
      m = std::max(m, r * std::abs(f(std::polar(r, theta))));
    }
    return m;
  };
  const double r1 = 1e3 * radius;
  const double m1 = arc_size(r1);
  const double m2 = arc_size(10.0 * r1);
  if (!std::isfinite(m1) || !std::isfinite(m2) || m2 > 0.5 * m1) {
    throw DegenerateContourError("integrand does not decay on the closing quarter circle");
  }
  return spec;
}

QuadratureResult integrate_contour(const ComplexIntegrand& f, const ContourSpec& spec) {
  if (spec.axis == Axis::real_positive) {
    return integrate_semi_infinite([&f](double x) { return f(cplx{x, 0.0}); }, spec.decay_scale,
                                   spec.tol);
  }

  // Poles on the imaginary axis are passed on a small semicircle bulging into Re > 0. The
  // pole then lies outside the closed quarter contour, so the detoured path alone equals the
  // real-axis integral; this is the principal value plus half the residue, without the
  // cancellation a subtraction would suffer next to the pole.
  std::vector<std::pair<double, double>> detours;  // (xi0, radius)
  for (const auto& r : spec.residues) {
    if (r.weight != 0.5) continue;
    const double xi0 = r.location.imag();
    double radius = 0.5 * xi0;
    for (const auto& other : spec.residues) {
      if (other.location != r.location) radius = std::min(radius, 0.5 * std::abs(other.location - r.location));
    }
    detours.emplace_back(xi0, radius);
  }
  std::sort(detours.begin(), detours.end());

  auto axis = [&f](double xi) { return I * f(cplx{0.0, xi}); };
  const double share = 1.0 / static_cast<double>(2 * detours.size() + 1);
  Tolerance piece = spec.tol;
  piece.abs = spec.tol.abs * share;

  QuadratureResult result;
  auto add = [&result](const QuadratureResult& r) {
    result.value += r.value;
    result.error_estimate += r.error_estimate;
    result.evaluations += r.evaluations;
  };
  double lower = 0.0;
  for (const auto& [xi0, radius] : detours) {
    add(integrate(axis, lower, xi0 - radius, piece));
    const cplx centre{0.0, xi0};
    add(integrate(
        [&f, centre, radius](double theta) {
          const cplx e = std::polar(1.0, theta);
          return f(centre + radius * e) * (I * radius * e);
        },
        -0.5 * pi, 0.5 * pi, piece));
    lower = xi0 + radius;
  }
  add(integrate_semi_infinite(axis, spec.decay_scale, piece, {}, lower));
  for (const auto& r : spec.residues) {
    if (r.weight != 0.5) result.value += two_pi * I * r.weight * r.residue;
  }
  return result;
}

}  // namespace casimir::quad
