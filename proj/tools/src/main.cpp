#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "casimir/cli/analysis.hpp"
#include "casimir/cli/config.hpp"
#include "casimir/cli/scan.hpp"
#include "casimir/cli/suites.hpp"
#include "casimir/cli/table.hpp"

namespace cli = casimir::cli;

namespace {

struct Common {
  std::string config;
  std::string output;
  std::string quantity;
  int workers = 0;
  double tol = 0.0;
};

cli::RunConfig resolve(const Common& o) {
  cli::RunConfig c = o.config.empty() ? cli::default_config() : cli::load_config(o.config);
  if (!o.quantity.empty()) c.scan.quantity = cli::parse_quantity(o.quantity);
  if (o.workers > 0) c.workers = o.workers;
  if (!o.output.empty()) c.output = o.output;
  c.validate();
  return c;
}

void emit(const cli::RunConfig& c, const cli::Table& t) {
  if (c.output.empty()) {
    cli::write_table(std::cout, t);
  } else {
    cli::write_table(c.output, t);
  }
}

int report_suite(const std::vector<cli::CheckResult>& checks, const std::string& output) {
  std::ostringstream text;
  cli::print_checks(text, checks);
  const bool ok = cli::all_passed(checks);
  text << (ok ? "PASS" : "FAIL") << " suite " << checks.size() << " checks\n";
  std::cout << text.str();
  if (!output.empty()) {
    std::ofstream out(output);
    out << text.str();
  }
  return ok ? 0 : 1;
}

struct Window {
  std::string table;
  std::string column = "shift_rad_s";
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"casimir: dispersion forces and transfer rates between two atoms"};
  app.require_subcommand(1);

  Common opt;
  auto add_common = [&opt](CLI::App* sub, bool quantity, bool workers) {
    sub->add_option("--config", opt.config, "YAML run configuration")->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output, "Write results here instead of stdout");
    sub->add_option("--tol", opt.tol, "Relative tolerance")->check(CLI::PositiveNumber);
    if (quantity) {
      sub->add_option("--quantity", opt.quantity,
                      "gg, ge_keldysh, ge_feynman, fret, rates, identities or oracle");
    }
    if (workers) sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* scan = app.add_subcommand("scan", "Distance scan of a self-energy or transfer rate");
  add_common(scan, true, true);
  auto* rates = app.add_subcommand("rates", "Single-atom emission and thermal absorption rates");
  add_common(rates, false, false);
  auto* identities = app.add_subcommand("identities", "Check the algebraic identities");
  add_common(identities, false, false);
  auto* oracle = app.add_subcommand("oracle", "Compare against perturbation theory on mode models");
  add_common(oracle, false, true);
  std::optional<unsigned> seed;
  std::optional<int> models;
  std::optional<int> modes;
  oracle->add_option("--seed", seed, "Random seed");
  oracle->add_option("--models", models, "Number of random models")->check(CLI::PositiveNumber);
  oracle->add_option("--modes", modes, "Field modes per model")->check(CLI::Range(1, 32));

  Window window;
  auto add_window = [&window, &opt](CLI::App* sub) {
    sub->add_option("table", window.table, "Table written by 'scan'")->required()->check(CLI::ExistingFile);
    sub->add_option("--quantity,--column", window.column, "Column to analyse");
    sub->add_option("--r-min", window.r_min, "Lower end of the r window [m]");
    sub->add_option("--r-max", window.r_max, "Upper end of the r window [m]");
    sub->add_option("--output", opt.output, "Write the result here as well");
  };
  auto* fit = app.add_subcommand("fit", "Power-law slope of a table column");
  add_window(fit);
  auto* osc = app.add_subcommand("oscillations", "Zero crossings of a table column");
  add_window(osc);

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed() || rates->parsed()) {
      cli::RunConfig c = resolve(opt);
      if (opt.tol > 0.0) c.tol.rel = opt.tol;
      if (rates->parsed()) {
        const auto t = cli::run_rates(c);
        emit(c, t);
        return t.errors.front().empty() ? 0 : 1;
      }
      if (c.scan.quantity == cli::Quantity::rates) {
        emit(c, cli::run_rates(c));
        return 0;
      }
      if (c.scan.quantity == cli::Quantity::identities) {
        return report_suite(cli::identities_suite(c, opt.tol > 0.0 ? opt.tol : 1e-10), opt.output);
      }
      if (c.scan.quantity == cli::Quantity::oracle) {
        return report_suite(cli::oracle_suite(c.oracle, opt.tol > 0.0 ? opt.tol : 1e-8, c.workers),
                            opt.output);
      }
      const auto t = cli::run_scan(c);
      emit(c, t);
      std::size_t failed = 0;
      for (const auto& e : t.errors) failed += e.empty() ? 0 : 1;
      if (failed > 0) std::cerr << failed << " of " << t.rows.size() << " points failed\n";
      return failed == 0 ? 0 : 1;
    }
    if (identities->parsed()) {
      const cli::RunConfig c = resolve(opt);
      return report_suite(cli::identities_suite(c, opt.tol > 0.0 ? opt.tol : 1e-10), opt.output);
    }
    if (oracle->parsed()) {
      cli::RunConfig c = resolve(opt);
      if (seed) c.oracle.seed = *seed;
      if (models) c.oracle.models = *models;
      if (modes) c.oracle.modes = *modes;
      return report_suite(cli::oracle_suite(c.oracle, opt.tol > 0.0 ? opt.tol : 1e-8, c.workers),
                          opt.output);
    }
    if (fit->parsed() || osc->parsed()) {
      const auto t = cli::read_table(window.table);
      std::ostringstream text;
      text << std::setprecision(10);
      if (fit->parsed()) {
        const auto f = cli::fit_slope(t, window.column, window.r_min, window.r_max);
        text << "slope " << f.slope << " +- " << f.standard_error << " points " << f.points << "\n";
      } else {
        const auto o = cli::detect_oscillation(t, window.column, window.r_min, window.r_max);
        if (!o.detected) {
          text << "none detected (" << o.crossings.size() << " crossings)\n";
        } else {
          text << "crossings " << o.crossings.size() << " mean_spacing " << o.mean_spacing
               << " stddev " << o.spacing_stddev << " period " << o.period << "\n";
          for (double x : o.crossings) text << x << "\n";
        }
      }
      std::cout << text.str();
      if (!opt.output.empty()) std::ofstream(opt.output) << text.str();
      return 0;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
