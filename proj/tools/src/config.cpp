#include "casimir/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include <casimir/constants.hpp>
#include <casimir/error.hpp>

namespace casimir::cli {

namespace {

namespace au = atomic_units;

std::string where(const std::string& source, const YAML::Node& node, const std::string& field) {
  std::ostringstream out;
  out << source;
  if (node.IsDefined() && node.Mark().line >= 0) out << ":" << node.Mark().line + 1;
  out << ": field '" << field << "'";
  return out.str();
}

// Walks a YAML mapping, tracking the dotted path for messages and rejecting unknown keys.
class Section {
 public:
  Section(const YAML::Node& node, std::string path, const std::string& source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(where(source_, node_, path_) + ": expected a mapping");
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull();
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node get(const std::string& key) {
    seen_.insert(key);
    return node_.IsMap() ? node_[key] : YAML::Node();
  }

  template <class T>
  T scalar(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = get(key);
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(where(source_, n, field(key)) + ": cannot parse value '" +
                        (n.IsScalar() ? n.Scalar() : std::string("<non-scalar>")) + "'");
    }
  }

  Eigen::Vector3d vector(const std::string& key, const Eigen::Vector3d& fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = get(key);
    if (!n.IsSequence() || n.size() != 3) {
      throw ConfigError(where(source_, n, field(key)) + ": expected a list of three numbers");
    }
    Eigen::Vector3d v;
    for (std::size_t i = 0; i < 3; ++i) {
      try {
        v[static_cast<Eigen::Index>(i)] = n[i].as<double>();
      } catch (const YAML::Exception&) {
        throw ConfigError(where(source_, n[i], field(key)) + ": not a number");
      }
    }
    return v;
  }

  Section child(const std::string& key) { return Section(get(key), field(key), source_); }

  [[noreturn]] void fail(const std::string& key, const std::string& message) {
    const YAML::Node n = node_.IsMap() && node_[key].IsDefined() ? node_[key] : node_;
    throw ConfigError(where(source_, n, field(key)) + ": " + message);
  }

  void reject_unknown() const {
    if (!node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ConfigError(where(source_, kv.first, field(key)) + ": unknown key");
      }
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  const std::string& source_;
  std::set<std::string> seen_;
};

void require(bool ok, Section& s, const std::string& key, const std::string& message) {
  if (!ok) s.fail(key, message);
}

AtomSpec parse_atom(Section s, AtomSpec spec) {
  spec.omega_rad_s = s.scalar("omega_rad_s", spec.omega_rad_s);
  require(spec.omega_rad_s > 0.0 && std::isfinite(spec.omega_rad_s), s, "omega_rad_s", "must be > 0");
  spec.dipole_au = s.vector("dipole_au", spec.dipole_au);
  require(spec.dipole_au.allFinite(), s, "dipole_au", "must be finite");
  const auto state = s.scalar<std::string>("state", spec.state == AtomState::ground ? "ground" : "excited");
  if (state == "ground") {
    spec.state = AtomState::ground;
  } else if (state == "excited") {
    spec.state = AtomState::excited;
  } else {
    s.fail("state", "expected 'ground' or 'excited'");
  }
  if (s.has("linewidth_rad_s")) {
    spec.linewidth_rad_s = s.scalar("linewidth_rad_s", 0.0);
    require(*spec.linewidth_rad_s >= 0.0, s, "linewidth_rad_s", "must be >= 0");
  }
  s.reject_unknown();
  return spec;
}

}  // namespace

Quantity parse_quantity(const std::string& name) {
  static const std::pair<const char*, Quantity> names[] = {
      {"gg", Quantity::gg},         {"ge_keldysh", Quantity::ge_keldysh},
      {"ge_feynman", Quantity::ge_feynman}, {"fret", Quantity::fret},
      {"rates", Quantity::rates},   {"identities", Quantity::identities},
      {"oracle", Quantity::oracle}};
  for (const auto& [n, q] : names) {
    if (name == n) return q;
  }
  throw ConfigError("unknown quantity '" + name +
                    "' (expected gg, ge_keldysh, ge_feynman, fret, rates, identities or oracle)");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::gg: return "gg";
    case Quantity::ge_keldysh: return "ge_keldysh";
    case Quantity::ge_feynman: return "ge_feynman";
    case Quantity::fret: return "fret";
    case Quantity::rates: return "rates";
    case Quantity::identities: return "identities";
    case Quantity::oracle: return "oracle";
  }
  return "?";
}

void RunConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError("field '" + field + "': " + msg);
  };
  if (!(a.omega_rad_s > 0.0)) fail("atoms.a.omega_rad_s", "must be > 0");
  if (!(b.omega_rad_s > 0.0)) fail("atoms.b.omega_rad_s", "must be > 0");
  if (!(scan.r_min_m > 0.0)) fail("scan.r_min_m", "must be > 0");
  if (!(scan.r_min_m < scan.r_max_m)) fail("scan.r_max_m", "r_min_m must be < r_max_m");
  if (scan.points < 2) fail("scan.points", "must be >= 2");
  if (scan.direction.norm() == 0.0) fail("scan.direction", "must be non-zero");
  if (temperature_K < 0.0) fail("temperature_K", "must be >= 0");
  if (broadening_rad_s < 0.0) fail("broadening_rad_s", "must be >= 0");
  if (workers < 1) fail("workers", "must be >= 1");
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) fail("tolerances", "must be > 0");
  if (medium.model == MediumSpec::Model::constant && !(medium.epsilon >= 1.0)) {
    fail("medium.epsilon", "must be >= 1");
  }
  if (oracle.models < 1) fail("oracle.models", "must be >= 1");
  if (oracle.modes < 1 || oracle.modes > 32) fail("oracle.modes", "must be in 1..32");
}

RunConfig default_config() {
  RunConfig c;
  // Two alkali-like transitions around 1.5 eV and 2 eV.
  c.a.omega_rad_s = 2.3e15;
  c.b.omega_rad_s = 3.0e15;
  c.a.dipole_au = Eigen::Vector3d(2.0, 0.0, 0.0);
  c.b.dipole_au = Eigen::Vector3d(2.0, 0.0, 0.0);
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  RunConfig c = default_config();
  Section top(root, "", source);

  {
    Section atoms = top.child("atoms");
    c.a = parse_atom(atoms.child("a"), c.a);
    c.b = parse_atom(atoms.child("b"), c.b);
    atoms.reject_unknown();
  }
  {
    Section m = top.child("medium");
    const auto model = m.scalar<std::string>("model", "vacuum");
    if (model == "vacuum") {
      c.medium.model = MediumSpec::Model::vacuum;
    } else if (model == "constant") {
      c.medium.model = MediumSpec::Model::constant;
      c.medium.epsilon = m.scalar("epsilon", 1.0);
      require(c.medium.epsilon >= 1.0, m, "epsilon", "must be real and >= 1");
    } else if (model == "tabulated") {
      c.medium.model = MediumSpec::Model::tabulated;
      require(m.has("table"), m, "table", "required for model 'tabulated'");
      c.medium.table = m.scalar<std::string>("table", "");
    } else {
      m.fail("model", "expected 'vacuum', 'constant' or 'tabulated'");
    }
    m.has("epsilon");
    m.has("table");
    m.reject_unknown();
  }

  c.temperature_K = top.scalar("temperature_K", c.temperature_K);
  require(c.temperature_K >= 0.0, top, "temperature_K", "must be >= 0");

  const auto orientation = top.scalar<std::string>("orientation", "fixed");
  if (orientation == "fixed") {
    c.orientation = Orientation::fixed;
  } else if (orientation == "isotropic") {
    c.orientation = Orientation::isotropic;
  } else {
    top.fail("orientation", "expected 'fixed' or 'isotropic'");
  }

  c.broadening_rad_s = top.scalar("broadening_rad_s", c.broadening_rad_s);
  require(c.broadening_rad_s >= 0.0, top, "broadening_rad_s", "must be >= 0");

  {
    Section s = top.child("scan");
    const auto q = s.scalar<std::string>("quantity", "gg");
    try {
      c.scan.quantity = parse_quantity(q);
    } catch (const ConfigError& e) {
      s.fail("quantity", e.what());
    }
    c.scan.r_min_m = s.scalar("r_min_m", c.scan.r_min_m);
    require(c.scan.r_min_m > 0.0, s, "r_min_m", "must be > 0");
    c.scan.r_max_m = s.scalar("r_max_m", c.scan.r_max_m);
    require(c.scan.r_max_m > c.scan.r_min_m, s, "r_max_m", "must be > r_min_m");
    c.scan.points = s.scalar("points", c.scan.points);
    require(c.scan.points >= 2, s, "points", "must be >= 2");
    const auto spacing = s.scalar<std::string>("spacing", "log");
    if (spacing == "log") {
      c.scan.spacing = Spacing::log;
    } else if (spacing == "linear") {
      c.scan.spacing = Spacing::linear;
    } else {
      s.fail("spacing", "expected 'log' or 'linear'");
    }
    c.scan.direction = s.vector("direction", c.scan.direction);
    require(c.scan.direction.norm() > 0.0, s, "direction", "must be non-zero");
    s.reject_unknown();
  }
  {
    Section o = top.child("oracle");
    c.oracle.seed = o.scalar("seed", c.oracle.seed);
    c.oracle.models = o.scalar("models", c.oracle.models);
    require(c.oracle.models >= 1, o, "models", "must be >= 1");
    c.oracle.modes = o.scalar("modes", c.oracle.modes);
    require(c.oracle.modes >= 1 && c.oracle.modes <= 32, o, "modes", "must be in 1..32");
    c.oracle.coupling = o.scalar("coupling", c.oracle.coupling);
    require(c.oracle.coupling > 0.0, o, "coupling", "must be > 0");
    o.reject_unknown();
  }
  {
    Section t = top.child("tolerances");
    c.tol.rel = t.scalar("rel", c.tol.rel);
    require(c.tol.rel > 0.0, t, "rel", "must be > 0");
    c.tol.abs = t.scalar("abs", c.tol.abs);
    require(c.tol.abs > 0.0, t, "abs", "must be > 0");
    c.tol.max_evaluations = t.scalar("max_evaluations", c.tol.max_evaluations);
    t.reject_unknown();
  }

  if (top.has("output")) c.output = top.scalar<std::string>("output", "");
  c.workers = top.scalar("workers", c.workers);
  require(c.workers >= 1, top, "workers", "must be >= 1");
  top.reject_unknown();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  RunConfig c = parse_config(text.str(), path.string());
  if (!c.medium.table.empty() && c.medium.table.is_relative()) {
    c.medium.table = path.parent_path() / c.medium.table;
  }
  return c;
}

std::string dump_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  auto atom = [&out](const char* name, const AtomSpec& a) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "omega_rad_s" << YAML::Value << a.omega_rad_s;
    out << YAML::Key << "dipole_au" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << a.dipole_au.x() << a.dipole_au.y() << a.dipole_au.z() << YAML::EndSeq;
    out << YAML::Key << "state" << YAML::Value
        << (a.state == AtomState::ground ? "ground" : "excited");
    if (a.linewidth_rad_s) out << YAML::Key << "linewidth_rad_s" << YAML::Value << *a.linewidth_rad_s;
    out << YAML::EndMap;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "atoms" << YAML::Value << YAML::BeginMap;
  atom("a", c.a);
  atom("b", c.b);
  out << YAML::EndMap;

  out << YAML::Key << "medium" << YAML::Value << YAML::BeginMap;
  switch (c.medium.model) {
    case MediumSpec::Model::vacuum:
      out << YAML::Key << "model" << YAML::Value << "vacuum";
      break;
    case MediumSpec::Model::constant:
      out << YAML::Key << "model" << YAML::Value << "constant";
      out << YAML::Key << "epsilon" << YAML::Value << c.medium.epsilon;
      break;
    case MediumSpec::Model::tabulated:
      out << YAML::Key << "model" << YAML::Value << "tabulated";
      out << YAML::Key << "table" << YAML::Value << c.medium.table.string();
      break;
  }
  out << YAML::EndMap;

  out << YAML::Key << "temperature_K" << YAML::Value << c.temperature_K;
  out << YAML::Key << "orientation" << YAML::Value
      << (c.orientation == Orientation::fixed ? "fixed" : "isotropic");
  out << YAML::Key << "broadening_rad_s" << YAML::Value << c.broadening_rad_s;

  out << YAML::Key << "scan" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "quantity" << YAML::Value << to_string(c.scan.quantity);
  out << YAML::Key << "r_min_m" << YAML::Value << c.scan.r_min_m;
  out << YAML::Key << "r_max_m" << YAML::Value << c.scan.r_max_m;
  out << YAML::Key << "points" << YAML::Value << c.scan.points;
  out << YAML::Key << "spacing" << YAML::Value << (c.scan.spacing == Spacing::log ? "log" : "linear");
  out << YAML::Key << "direction" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << c.scan.direction.x() << c.scan.direction.y() << c.scan.direction.z() << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "oracle" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.oracle.seed;
  out << YAML::Key << "models" << YAML::Value << c.oracle.models;
  out << YAML::Key << "modes" << YAML::Value << c.oracle.modes;
  out << YAML::Key << "coupling" << YAML::Value << c.oracle.coupling;
  out << YAML::EndMap;

  out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rel" << YAML::Value << c.tol.rel;
  out << YAML::Key << "abs" << YAML::Value << c.tol.abs;
  out << YAML::Key << "max_evaluations" << YAML::Value << c.tol.max_evaluations;
  out << YAML::EndMap;

  if (!c.output.empty()) out << YAML::Key << "output" << YAML::Value << c.output.string();
  out << YAML::Key << "workers" << YAML::Value << c.workers;
  out << YAML::EndMap;
  return out.c_str();
}

Medium make_medium(const RunConfig& config) {
  const double c = au::speed_of_light;
  switch (config.medium.model) {
    case MediumSpec::Model::vacuum:
      return Medium::vacuum(c);
    case MediumSpec::Model::constant:
      return Medium::constant(config.medium.epsilon, c);
    case MediumSpec::Model::tabulated:
      return Medium::from_table_file(config.medium.table, 1.0 / au::angular_frequency_rad_s, c);
  }
  throw ConfigError("unknown medium model");
}

TwoLevelAtom make_atom(const AtomSpec& spec, const Eigen::Vector3d& position_au) {
  TwoLevelAtom atom;
  atom.position = position_au;
  atom.omega = au::frequency_from_si(spec.omega_rad_s);
  atom.dipole = spec.dipole_au;
  atom.state = spec.state;
  if (spec.linewidth_rad_s) atom.linewidth = au::frequency_from_si(*spec.linewidth_rad_s);
  return atom;
}

}  // namespace casimir::cli
