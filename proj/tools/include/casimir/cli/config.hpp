#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <casimir/coupling.hpp>
#include <casimir/medium.hpp>
#include <casimir/polarizability.hpp>
#include <casimir/quadrature.hpp>

namespace casimir::cli {

/// Raised for invalid configuration files; the message names the line and the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Quantity { gg, ge_keldysh, ge_feynman, fret, rates, identities, oracle };
enum class Spacing { log, linear };

Quantity parse_quantity(const std::string& name);
std::string to_string(Quantity q);

struct AtomSpec {
  double omega_rad_s = 0.0;
  Eigen::Vector3d dipole_au = Eigen::Vector3d::UnitX();
  AtomState state = AtomState::ground;
  std::optional<double> linewidth_rad_s;
};

struct MediumSpec {
  enum class Model { vacuum, constant, tabulated };
  Model model = Model::vacuum;
  double epsilon = 1.0;
  /// Three columns: omega [rad/s], Re eps, Im eps. Relative paths resolve against the config.
  std::filesystem::path table;
};

struct ScanSpec {
  Quantity quantity = Quantity::gg;
  double r_min_m = 1e-9;
  double r_max_m = 1e-6;
  int points = 50;
  Spacing spacing = Spacing::log;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
};

struct OracleSpec {
  unsigned seed = 1;
  int models = 20;
  int modes = 8;
  double coupling = 0.3;
};

/// Everything a run needs, in SI units (dipoles in atomic units e a0).
struct RunConfig {
  AtomSpec a;
  AtomSpec b;
  MediumSpec medium;
  double temperature_K = 0.0;
  Orientation orientation = Orientation::fixed;
  ScanSpec scan;
  OracleSpec oracle;
  double broadening_rad_s = 0.0;
  quad::Tolerance tol{};
  std::filesystem::path output;
  int workers = 1;

  /// Throws ConfigError for violated invariants.
  void validate() const;
};

RunConfig default_config();
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Resolved configuration as YAML, suitable for re-loading.
std::string dump_config(const RunConfig& config);

/// Conversions into the unit-agnostic model (Hartree atomic units, c = 137.036).
Medium make_medium(const RunConfig& config);
TwoLevelAtom make_atom(const AtomSpec& spec, const Eigen::Vector3d& position_au);

}  // namespace casimir::cli
