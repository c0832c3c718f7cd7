#include "casimir/cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <casimir/green.hpp>
#include <casimir/oracle.hpp>
#include <casimir/self_energy.hpp>

#include "casimir/cli/scan.hpp"

namespace casimir::cli {

namespace {

namespace au = atomic_units;

class Check {
 public:
  Check(std::string name, double tol) {
    result_.name = std::move(name);
    result_.tolerance = tol;
  }

  void observe(double deviation) {
    if (!(deviation <= result_.deviation)) result_.deviation = deviation;  // NaN sticks
  }

  void fail(const std::string& why) {
    failed_ = true;
    result_.detail = why;
  }

  CheckResult finish() {
    result_.pass = !failed_ && result_.deviation <= result_.tolerance;
    return result_;
  }

 private:
  CheckResult result_;
  bool failed_ = false;
};

double relative(cplx got, cplx want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got - want);
}

template <class F>
void guarded(Check& check, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    check.fail(e.what());
  }
}

// A handful of separations from the configured scan, enough to span near and far zone.
std::vector<double> sample_separations(const ScanSpec& scan) {
  ScanSpec s = scan;
  s.points = std::min(scan.points, 7);
  s.spacing = Spacing::log;
  return scan_points(s);
}

}  // namespace

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " max_dev=" << std::setprecision(3)
        << std::scientific << c.deviation << " tol=" << c.tolerance << std::defaultfloat;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> identities_suite(const RunConfig& config, double tol) {
  std::vector<CheckResult> out;
  const Medium medium = make_medium(config);
  const double wa = au::frequency_from_si(config.a.omega_rad_s);
  const double wb = au::frequency_from_si(config.b.omega_rad_s);
  const double temperature = au::temperature_from_si(config.temperature_K);
  const auto separations = sample_separations(config.scan);
  const Eigen::Vector3d dir = config.scan.direction.normalized();

  {
    Check c("alpha_offdiagonal_identity", tol);
    guarded(c, [&] {
      for (double wn : {wa, wb}) {
        const double eps = 1e-3 * wn;
        for (double x : {0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0}) {
          for (double sign : {1.0, -1.0}) {
            const double w = sign * x * wn;
            for (AtomState s : {AtomState::ground, AtomState::excited}) {
              const cplx lhs = alpha_feynman(s, wn, w, eps) - alpha_offdiagonal_broadened(s, wn, w, eps);
              c.observe(relative(lhs, alpha_retarded(s, wn, w, eps)));
            }
          }
        }
      }
    });
    out.push_back(c.finish());
  }
  {
    Check c("alpha_retarded_excited_is_minus_ground", tol);
    guarded(c, [&] {
      for (double x : {0.1, 0.5, 2.0, 10.0}) {
        const cplx w{x * wa, 0.3 * wa};
        const cplx g = alpha_retarded_sharp(AtomState::ground, wa, w);
        c.observe(relative(alpha_retarded_sharp(AtomState::excited, wa, w), -g));
      }
    });
    out.push_back(c.finish());
  }
  {
    Check c("green_reciprocity", tol);
    guarded(c, [&] {
      for (double r : separations) {
        const Vec3 ra = Vec3(0.1, -0.2, 0.3) * au::length_from_si(r);
        const Vec3 rb = dir * au::length_from_si(r);
        for (double w : {wa, wb}) {
          const DyadicGreen g1 = green_retarded(w, rb, ra, medium);
          const DyadicGreen g2 = green_retarded(w, ra, rb, medium);
          c.observe((g1 - g2.transpose()).norm() / g1.norm());
        }
      }
    });
    out.push_back(c.finish());
  }
  {
    Check c("keldysh_fdt_relations", tol);
    guarded(c, [&] {
      const TwoLevelAtom a = make_atom(config.a, Vec3::Zero());
      for (double r : separations) {
        const Vec3 rb = dir * au::length_from_si(r);
        for (double w : {wa, wb}) {
          const auto k = keldysh_components(w, rb, a.position, config.b.dipole_au,
                                            config.a.dipole_au, medium, temperature);
          const double scale = std::abs(k.d_r) + std::abs(k.d11);
          c.observe(std::abs(k.d11 - k.d12 - k.d_r) / scale);
          c.observe(std::abs(k.d21 - k.d12 - (k.d_r - k.d_a)) / scale);
        }
      }
    });
    out.push_back(c.finish());
  }

  SelfEnergyOptions options;
  options.tol = config.tol;
  options.broadening = au::frequency_from_si(config.broadening_rad_s);

  auto ge_pair = [&](double r) {
    TwoLevelAtom a = make_atom(config.a, Vec3::Zero());
    TwoLevelAtom b = make_atom(config.b, dir * au::length_from_si(r));
    a.state = AtomState::excited;
    b.state = AtomState::ground;
    return std::pair{a, b};
  };

  {
    Check c("keldysh_two_term_vs_four_term", tol);
    guarded(c, [&] {
      for (double r : separations) {
        const auto [a, b] = ge_pair(r);
        const FreeSpaceCoupling coupling(a, b, medium, config.orientation);
        const auto two = sigma_ge_keldysh(a, b, coupling, options);
        const auto four = sigma_ge_keldysh_expanded(a, b, coupling, options);
        c.observe(relative(four.total, two.total));
      }
    });
    out.push_back(c.finish());
  }
  {
    Check c("feynman_minus_keldysh", tol);
    guarded(c, [&] {
      for (double r : separations) {
        const auto [a, b] = ge_pair(r);
        const FreeSpaceCoupling coupling(a, b, medium, config.orientation);
        const auto k = sigma_ge_keldysh(a, b, coupling, options);
        const auto f = sigma_ge_feynman(a, b, coupling, options);
        const double eps = resonant_broadening(a, b, options);
        const cplx alpha = eps > 0.0 ? alpha_retarded(AtomState::ground, b.omega, a.omega, eps)
                                     : alpha_retarded_sharp(AtomState::ground, b.omega, a.omega);
        const cplx want = -alpha * (coupling.squared(a.omega) - coupling.modulus_squared(a.omega));
        c.observe(std::abs((f.total - k.total) - want) / std::max(std::abs(k.total), std::abs(want)));
      }
    });
    out.push_back(c.finish());
  }
  if (options.broadening == 0.0 && !config.a.linewidth_rad_s && !config.b.linewidth_rad_s) {
    Check c("feynman_closed_form_vs_contour", tol);
    guarded(c, [&] {
      for (double r : separations) {
        const auto [a, b] = ge_pair(r);
        const FreeSpaceCoupling coupling(a, b, medium, config.orientation);
        const auto f = sigma_ge_feynman(a, b, coupling, options);
        const auto contour = sigma_ge_feynman_contour(a, b, coupling, config.tol);
        c.observe(relative(contour.total, f.total));
      }
    });
    out.push_back(c.finish());
  }
  if (medium.lossless()) {
    Check c("spontaneous_rate_closed_form", tol);
    guarded(c, [&] {
      TwoLevelAtom a = make_atom(config.a, Vec3::Zero());
      a.state = AtomState::excited;
      const double n = medium.refractive_index(a.omega).real();
      const double want = 4.0 / 3.0 * a.dipole.squaredNorm() * std::pow(a.omega, 3) * n /
                          std::pow(medium.light_speed(), 3);
      c.observe(relative(gamma_spontaneous(a, medium), want));
    });
    out.push_back(c.finish());
  }
  return out;
}

std::vector<CheckResult> oracle_suite(const OracleSpec& spec, double tol, int workers) {
  std::mt19937_64 rng(spec.seed);
  std::vector<oracle::RandomSystem> systems;
  for (int m = 0; m < spec.models; ++m) {
    systems.push_back(oracle::random_system(rng, spec.modes, spec.coupling));
  }

  quad::Tolerance qtol;
  qtol.rel = 1e-12;
  qtol.abs = 1e-15;
  std::vector<CheckResult> out(systems.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < systems.size(); i = next++) {
      std::ostringstream name;
      name << "oracle_model_" << i << "_modes_" << spec.modes;
      Check c(name.str(), tol);
      guarded(c, [&] {
        const auto& s = systems[i];
        const auto pt = oracle::rspt4_ground_shift(s.model, s.a, s.b);
        const double pipe = oracle::pipeline_sigma_gg(s.model, s.a, s.b, qtol);
        c.observe(std::abs(pipe - pt.connected_e4) / std::abs(pt.connected_e4));
      });
      out[i] = c.finish();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::min<int>(workers, spec.models); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // Exact diagonalisation on a small model: lambda^4 coefficient of the cross energy.
  Check ed("oracle_exact_diagonalization_modes_4", 1e-4);
  guarded(ed, [&] {
    std::mt19937_64 small_rng(spec.seed);
    const auto s = oracle::random_system(small_rng, 4, 1.0);
    const auto pt = oracle::rspt4_ground_shift(s.model, s.a, s.b);
    const double lambdas[] = {0.01, 0.02, 0.03, 0.04, 0.05};
    const auto fit = oracle::fit_connected_quartic(s.model, s.a, s.b, lambdas);
    ed.observe(std::abs(fit.coefficient - pt.connected_e4) / std::abs(pt.connected_e4));
  });
  out.push_back(ed.finish());
  return out;
}

}  // namespace casimir::cli
