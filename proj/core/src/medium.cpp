#include "casimir/medium.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

// Boost 1.74 pchip calls isnan unqualified on plain doubles.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct Medium::Table {
  using Interp = boost::math::interpolators::pchip<std::vector<double>>;

  std::vector<PermittivitySample> samples;
  double log_min = 0.0;
  double log_max = 0.0;
  bool lossless = true;
  std::unique_ptr<Interp> re;
  std::unique_ptr<Interp> im;

  explicit Table(std::vector<PermittivitySample> s) : samples(std::move(s)) {
    std::vector<double> x_re;
    std::vector<double> y_re;
    for (const auto& p : samples) {
      x_re.push_back(std::log(p.omega));
      y_re.push_back(p.epsilon.real());
      if (p.epsilon.imag() != 0.0) lossless = false;
    }
    std::vector<double> x_im = x_re;
    std::vector<double> y_im;
    for (const auto& p : samples) y_im.push_back(p.epsilon.imag());
    log_min = x_re.front();
    log_max = x_re.back();
    re = std::make_unique<Interp>(std::move(x_re), std::move(y_re));
    im = std::make_unique<Interp>(std::move(x_im), std::move(y_im));
  }

  cplx on_real_axis(double omega) const {
    const double x = std::log(omega);
    if (x < log_min || x > log_max) {
      std::ostringstream msg;
      msg << "frequency " << omega << " outside tabulated range [" << samples.front().omega
          << ", " << samples.back().omega << "]";
      throw DomainError(msg.str());
    }
    return {(*re)(x), std::max(0.0, (*im)(x))};
  }

  // eps(i xi) = 1 + (2/pi) Int omega Im eps(omega) / (omega^2 + xi^2), Im eps = 0 off-table.
  double on_imaginary_axis(double xi) const {
    if (lossless) return 1.0;
    std::vector<double> knots;
    for (const auto& p : samples) knots.push_back(p.omega);
    quad::Tolerance tol;
    tol.rel = 1e-11;
    tol.abs = 1e-15;
    auto r = quad::integrate(
        [this, xi](double w) {
          return cplx{w * on_real_axis(w).imag() / (w * w + xi * xi), 0.0};
        },
        samples.front().omega, samples.back().omega, tol, knots);
    return 1.0 + 2.0 / pi * r.value.real();
  }
};

Medium::Medium(Kind kind, double light_speed, double epsilon, std::shared_ptr<const Table> table)
    : kind_(kind), light_speed_(light_speed), epsilon_(epsilon), table_(std::move(table)) {
  if (!(light_speed > 0.0)) throw DomainError("speed of light must be > 0");
}

Medium Medium::vacuum(double light_speed) { return Medium(Kind::vacuum, light_speed, 1.0, nullptr); }

Medium Medium::constant(double permittivity, double light_speed) {
  if (!(permittivity >= 1.0)) throw DomainError("constant permittivity must be real and >= 1");
  return Medium(Kind::constant, light_speed, permittivity, nullptr);
}

Medium Medium::tabulated(std::vector<PermittivitySample> samples, double light_speed) {
  if (samples.size() < 4) throw DomainError("tabulated medium needs at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.omega > 0.0)) throw DomainError("tabulated frequencies must be > 0");
    if (i > 0 && !(s.omega > samples[i - 1].omega)) {
      throw DomainError("tabulated frequencies must be strictly increasing");
    }
    if (s.epsilon.imag() < 0.0) throw DomainError("tabulated medium must be passive (Im eps >= 0)");
    if (!std::isfinite(s.epsilon.real()) || !std::isfinite(s.epsilon.imag())) {
      throw DomainError("tabulated permittivity must be finite");
    }
  }
  auto table = std::make_shared<const Table>(std::move(samples));
  return Medium(Kind::tabulated, light_speed, 1.0, std::move(table));
}

Medium Medium::from_table_file(const std::filesystem::path& path, double frequency_scale,
                               double light_speed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open permittivity table " + path.string());
  std::vector<PermittivitySample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double w = 0.0;
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> w)) continue;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra)) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected 'omega re_eps im_eps'";
      throw DomainError(msg.str());
    }
    samples.push_back({w * frequency_scale, {re, im}});
  }
  try {
    return tabulated(std::move(samples), light_speed);
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

bool Medium::lossless() const noexcept {
  return kind_ != Kind::tabulated || table_->lossless;
}

cplx Medium::permittivity(cplx omega) const {
  switch (kind_) {
    case Kind::vacuum:
      return 1.0;
    case Kind::constant:
      return epsilon_;
    case Kind::tabulated:
      break;
  }
  if (omega.imag() == 0.0) {
    if (omega.real() > 0.0) return table_->on_real_axis(omega.real());
    if (omega.real() < 0.0) return std::conj(table_->on_real_axis(-omega.real()));
    throw DomainError("tabulated medium: omega = 0 is outside the table");
  }
  if (omega.real() == 0.0 && omega.imag() > 0.0) return table_->on_imaginary_axis(omega.imag());
  throw UnsupportedModelError(
      "tabulated medium is only available on the real and positive imaginary axes");
}

cplx Medium::permeability(cplx) const { return 1.0; }

cplx Medium::refractive_index(cplx omega) const {
  return std::sqrt(permittivity(omega) * permeability(omega));
}

cplx Medium::wave_number(cplx omega) const {
  cplx k = refractive_index(omega) * omega / light_speed_;
  if (k.imag() < 0.0) k = -k;
  return k;
}

const std::vector<PermittivitySample>& Medium::samples() const {
  static const std::vector<PermittivitySample> none;
  return table_ ? table_->samples : none;
}

}  // namespace casimir
