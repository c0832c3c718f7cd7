#include "casimir/cli/scan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <casimir/constants.hpp>
#include <casimir/fret.hpp>
#include <casimir/self_energy.hpp>

namespace casimir::cli {

namespace {

namespace au = atomic_units;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Pair {
  TwoLevelAtom a;
  TwoLevelAtom b;
};

Pair make_pair(const RunConfig& config, double r_m, AtomState state_a) {
  Pair p;
  p.a = make_atom(config.a, Eigen::Vector3d::Zero());
  const Eigen::Vector3d dir = config.scan.direction.normalized();
  p.b = make_atom(config.b, dir * au::length_from_si(r_m));
  p.a.state = state_a;
  p.b.state = AtomState::ground;
  return p;
}

double to_si(double energy_au) { return au::frequency_to_si(energy_au); }

std::vector<double> evaluate(const RunConfig& config, const Medium& medium, double r_m) {
  const Quantity q = config.scan.quantity;
  const AtomState state_a = q == Quantity::gg ? AtomState::ground : AtomState::excited;
  const Pair p = make_pair(config, r_m, state_a);
  const FreeSpaceCoupling coupling(p.a, p.b, medium, config.orientation);
  const double kr = coupling.kr(p.a.omega);

  if (q == Quantity::fret) {
    const auto rate = fret_rate(p.a, p.b, Lineshape::of(p.a), Lineshape::of(p.b), coupling);
    return {r_m, kr, to_si(rate.rate), rate.coupling};
  }

  SelfEnergyOptions options;
  options.tol = config.tol;
  options.broadening = au::frequency_from_si(config.broadening_rad_s);

  SelfEnergy main;
  SelfEnergy other;
  if (q == Quantity::gg) {
    main = sigma_gg(p.a, p.b, coupling, config.tol);
  } else if (q == Quantity::ge_keldysh) {
    main = sigma_ge_keldysh(p.a, p.b, coupling, options);
    other = sigma_ge_feynman(p.a, p.b, coupling, options);
  } else {
    main = sigma_ge_feynman(p.a, p.b, coupling, options);
    other = sigma_ge_keldysh(p.a, p.b, coupling, options);
  }

  std::vector<double> row{r_m,
                          kr,
                          to_si(main.shift()),
                          to_si(main.width()),
                          to_si(main.nonresonant.real()),
                          to_si(main.resonant.real()),
                          to_si(main.oscillating.real())};
  if (q != Quantity::gg) {
    row.push_back(to_si(other.shift()));
    row.push_back(to_si(other.width()));
  }
  row.push_back(to_si(main.error_estimate));
  return row;
}

}  // namespace

std::vector<std::string> scan_columns(Quantity q) {
  if (q == Quantity::fret) return {"r_m", "kr", "rate_per_s", "coupling_au"};
  std::vector<std::string> cols{"r_m",           "kr",
                                "shift_rad_s",   "width_rad_s",
                                "nonresonant_rad_s", "resonant_rad_s",
                                "oscillating_rad_s"};
  if (q == Quantity::ge_keldysh) {
    cols.insert(cols.end(), {"feynman_shift_rad_s", "feynman_width_rad_s"});
  } else if (q == Quantity::ge_feynman) {
    cols.insert(cols.end(), {"keldysh_shift_rad_s", "keldysh_width_rad_s"});
  }
  cols.push_back("quad_error_rad_s");
  return cols;
}

std::vector<double> scan_points(const ScanSpec& scan) {
  std::vector<double> r(static_cast<std::size_t>(scan.points));
  const double n = static_cast<double>(scan.points - 1);
  for (int i = 0; i < scan.points; ++i) {
    const double t = static_cast<double>(i) / n;
    r[static_cast<std::size_t>(i)] =
        scan.spacing == Spacing::log
            ? scan.r_min_m * std::pow(scan.r_max_m / scan.r_min_m, t)
            : scan.r_min_m + t * (scan.r_max_m - scan.r_min_m);
  }
  r.front() = scan.r_min_m;
  r.back() = scan.r_max_m;
  return r;
}

Table run_scan(const RunConfig& config) {
  config.validate();
  const Quantity q = config.scan.quantity;
  if (q != Quantity::gg && q != Quantity::ge_keldysh && q != Quantity::ge_feynman &&
      q != Quantity::fret) {
    throw ConfigError("field 'scan.quantity': '" + to_string(q) + "' is not a distance scan");
  }
  const Medium medium = make_medium(config);
  const auto r = scan_points(config.scan);

  Table table;
  table.comments.push_back("casimir scan " + to_string(q));
  table.comments.push_back("units: r in m, shifts and widths in rad/s, rates in 1/s");
  table.comments.push_back(dump_config(config));
  table.columns = scan_columns(q);

  std::vector<std::vector<double>> rows(r.size());
  std::vector<std::string> errors(r.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < r.size(); i = next++) {
      try {
        rows[i] = evaluate(config, medium, r[i]);
      } catch (const std::exception& e) {
        rows[i].assign(table.columns.size(), nan);
        rows[i][0] = r[i];
        errors[i] = e.what();
      }
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.workers), r.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < r.size(); ++i) table.add_row(std::move(rows[i]), std::move(errors[i]));
  return table;
}

Table run_rates(const RunConfig& config) {
  config.validate();
  const Medium medium = make_medium(config);
  TwoLevelAtom a = make_atom(config.a, Eigen::Vector3d::Zero());
  TwoLevelAtom b = make_atom(config.b, Eigen::Vector3d::Zero());
  const double t = au::temperature_from_si(config.temperature_K);

  Table table;
  table.comments.push_back("casimir rates");
  table.comments.push_back("units: rates in 1/s");
  table.comments.push_back(dump_config(config));
  table.columns = {"temperature_K", "gamma0_a_per_s", "gamma0_b_per_s", "absorption_b_per_s",
                   "nbar_b"};
  std::vector<double> row{config.temperature_K, nan, nan, nan, nan};
  std::string error;
  try {
    a.state = AtomState::excited;
    TwoLevelAtom b_star = b;
    b_star.state = AtomState::excited;
    b.state = AtomState::ground;
    row[1] = to_si(gamma_spontaneous(a, medium));
    row[2] = to_si(gamma_spontaneous(b_star, medium));
    row[3] = to_si(gamma_thermal_absorption(b, medium, t));
    row[4] = occupation(b.omega, t);
  } catch (const std::exception& e) {
    error = e.what();
  }
  table.add_row(std::move(row), std::move(error));
  return table;
}

}  // namespace casimir::cli
