#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "casimir/error.hpp"

namespace casimir::oracle {

void ModeModel::validate() const {
  if (modes.empty() || modes.size() > 32) throw DomainError("mode model needs 1..32 modes");
  if (truncation < 2) throw DomainError("photon truncation must be >= 2");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (!(m.omega > 0.0)) throw DomainError("mode frequencies must be > 0");
    if (!std::isfinite(m.g_a) || !std::isfinite(m.g_b)) throw DomainError("couplings must be finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[j].omega == m.omega) throw DomainError("mode frequencies must be distinct");
    }
  }
}

cplx mode_green(const ModeModel& model, cplx omega) {
  cplx sum{};
  for (const auto& m : model.modes) {
    const cplx minus = m.omega - omega;
    const cplx plus = m.omega + omega;
    if (minus == cplx{} || plus == cplx{}) {
      throw SingularityError("mode_green evaluated on a mode frequency");
    }
    sum += m.g_b * m.g_a * (1.0 / minus + 1.0 / plus);
  }
  return sum;
}

ModeCoupling::ModeCoupling(ModeModel model) : model_(std::move(model)) { model_.validate(); }

cplx ModeCoupling::squared(cplx omega) const {
  const cplx d = mode_green(model_, omega);
  return d * d;
}

double ModeCoupling::modulus_squared(double omega) const {
  return std::norm(mode_green(model_, omega));
}

double ModeCoupling::decay_scale() const {
  double lo = model_.modes.front().omega;
  for (const auto& m : model_.modes) lo = std::min(lo, m.omega);
  return lo;
}

namespace {

using Occupation = std::vector<int>;

// Product basis |atom A> |atom B> |n_1 ... n_N>, total photons <= truncation.
class Basis {
 public:
  explicit Basis(const ModeModel& model) : modes_(model.modes.size()), truncation_(model.truncation) {
    Occupation occ(modes_, 0);
    enumerate(occ, 0, 0);
  }

  std::size_t photon_states() const { return configs_.size(); }
  std::size_t size() const { return 4 * configs_.size(); }
  const Occupation& config(std::size_t i) const { return configs_[i]; }

  // -1 when outside the truncated space
  long find(const Occupation& occ) const {
    auto it = index_.find(occ);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }

  static std::size_t state(int atom_a, int atom_b, std::size_t photon) {
    return 4 * photon + 2 * static_cast<std::size_t>(atom_a) + static_cast<std::size_t>(atom_b);
  }

 private:
  void enumerate(Occupation& occ, std::size_t mode, int used) {
    if (mode == modes_) {
      index_.emplace(occ, configs_.size());
      configs_.push_back(occ);
      return;
    }
    for (int n = 0; used + n <= truncation_; ++n) {
      occ[mode] = n;
      enumerate(occ, mode + 1, used + n);
    }
    occ[mode] = 0;
  }

  std::size_t modes_;
  int truncation_;
  std::vector<Occupation> configs_;
  std::map<Occupation, std::size_t> index_;
};

std::size_t count_configurations(std::size_t modes, int truncation) {
  // C(modes + truncation, truncation)
  double c = 1.0;
  for (int k = 1; k <= truncation; ++k) c = c * static_cast<double>(modes + k) / k;
  return static_cast<std::size_t>(std::llround(c));
}

struct Hamiltonian {
  Eigen::VectorXd h0;
  Eigen::MatrixXd v;
};

Hamiltonian build(const ModeModel& model, double omega_a, double omega_b) {
  const Basis basis(model);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Hamiltonian h;
  h.h0 = Eigen::VectorXd::Zero(dim);
  h.v = Eigen::MatrixXd::Zero(dim, dim);

  for (std::size_t p = 0; p < basis.photon_states(); ++p) {
    const Occupation& occ = basis.config(p);
    double photon_energy = 0.0;
    for (std::size_t k = 0; k < occ.size(); ++k) photon_energy += occ[k] * model.modes[k].omega;

    for (int sa = 0; sa < 2; ++sa) {
      for (int sb = 0; sb < 2; ++sb) {
        const auto from = static_cast<Eigen::Index>(Basis::state(sa, sb, p));
        h.h0(from) = sa * omega_a + sb * omega_b + photon_energy;

        for (std::size_t k = 0; k < occ.size(); ++k) {
          const double g[2] = {model.modes[k].g_a, model.modes[k].g_b};
          for (int atom = 0; atom < 2; ++atom) {
            if (g[atom] == 0.0) continue;
            const int s = atom == 0 ? sa : sb;
            const int flipped_a = atom == 0 ? 1 - sa : sa;
            const int flipped_b = atom == 1 ? 1 - sb : sb;
            const bool raising = s == 0;  // atom goes g -> e
            for (int dn : {-1, +1}) {
              // rotating terms: absorb while raising, emit while lowering
              const bool rotating = raising == (dn == -1);
              if (!rotating && !model.counter_rotating) continue;
              Occupation next = occ;
              next[k] += dn;
              if (next[k] < 0) continue;
              const long q = basis.find(next);
              if (q < 0) continue;
              const double amplitude = dn < 0 ? std::sqrt(static_cast<double>(occ[k]))
                                              : std::sqrt(static_cast<double>(occ[k] + 1));
              const auto to = static_cast<Eigen::Index>(
                  Basis::state(flipped_a, flipped_b, static_cast<std::size_t>(q)));
              h.v(to, from) += -g[atom] * amplitude;
            }
          }
        }
      }
    }
  }
  return h;
}

double require_omega(const TwoLevelAtom& atom) {
  atom.validate();
  return atom.omega;
}

struct Orders {
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
};

Orders rspt(const ModeModel& model, double omega_a, double omega_b) {
  const Hamiltonian h = build(model, omega_a, omega_b);
  const Eigen::Index ground = static_cast<Eigen::Index>(Basis::state(0, 0, 0));
  const double e0 = h.h0(ground);

  // R = Q / (E0 - H0)
  Eigen::VectorXd resolvent(h.h0.size());
  for (Eigen::Index i = 0; i < h.h0.size(); ++i) {
    if (i == ground) {
      resolvent(i) = 0.0;
      continue;
    }
    const double gap = e0 - h.h0(i);
    if (std::abs(gap) < 1e-12) throw DomainError("unperturbed spectrum degenerate with the ground state");
    resolvent(i) = 1.0 / gap;
  }

  const Eigen::VectorXd v0 = h.v.col(ground);
  if (v0(ground) != 0.0) throw DomainError("first-order shift is expected to vanish");
  const Eigen::VectorXd psi1 = resolvent.cwiseProduct(v0);
  const Eigen::VectorXd u = h.v * psi1;

  Orders o;
  o.e2 = v0.dot(psi1);
  o.e3 = psi1.dot(u);
  // E4 = <V R V R V R V> - E2 <V R^2 V> (E1 = 0)
  o.e4 = u.dot(resolvent.cwiseProduct(u)) - o.e2 * psi1.squaredNorm();
  return o;
}

}  // namespace

std::size_t hilbert_dimension(const ModeModel& model) {
  return 4 * count_configurations(model.modes.size(), model.truncation);
}

ModeModel without_atom_a(ModeModel model) {
  for (auto& m : model.modes) m.g_a = 0.0;
  return model;
}

ModeModel without_atom_b(ModeModel model) {
  for (auto& m : model.modes) m.g_b = 0.0;
  return model;
}

PTResult rspt4_ground_shift(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b) {
  model.validate();
  if (a.state != AtomState::ground || b.state != AtomState::ground) {
    throw DomainError("rspt4_ground_shift: both atoms must be in the ground state");
  }
  const double wa = require_omega(a);
  const double wb = require_omega(b);

  const Orders both = rspt(model, wa, wb);
  const Orders only_a = rspt(without_atom_b(model), wa, wb);
  const Orders only_b = rspt(without_atom_a(model), wa, wb);

  PTResult out;
  out.e2 = both.e2;
  out.e3 = both.e3;
  out.e4 = both.e4;
  out.connected_e4 = both.e4 - only_a.e4 - only_b.e4;
  return out;
}

double ed_ground_energy(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b,
                        double lambda, std::size_t max_dimension) {
  model.validate();
  const std::size_t dim = hilbert_dimension(model);
  if (dim > max_dimension) {
    std::ostringstream msg;
    msg << "Hilbert space dimension " << dim << " exceeds the cap " << max_dimension;
    throw DomainError(msg.str());
  }
  const Hamiltonian h = build(model, require_omega(a), require_omega(b));
  Eigen::MatrixXd full = lambda * h.v;
  full.diagonal() += h.h0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

QuarticFit fit_connected_quartic(const ModeModel& model, const TwoLevelAtom& a,
                                 const TwoLevelAtom& b, std::span<const double> lambdas,
                                 std::size_t max_dimension) {
  if (lambdas.size() < 3) throw DomainError("need at least three coupling values");
  const ModeModel only_a = without_atom_b(model);
  const ModeModel only_b = without_atom_a(model);

  const auto n = static_cast<Eigen::Index>(lambdas.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = lambdas[static_cast<std::size_t>(i)];
    if (!(l > 0.0)) throw DomainError("coupling values must be > 0");
    const double cross = ed_ground_energy(model, a, b, l, max_dimension) -
                         ed_ground_energy(only_a, a, b, l, max_dimension) -
                         ed_ground_energy(only_b, a, b, l, max_dimension);
    const double l2 = l * l;
    design(i, 0) = 1.0;
    design(i, 1) = l2;
    design(i, 2) = l2 * l2;
    rhs(i) = cross / (l2 * l2);
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
  return {c(0), (design * c - rhs).norm()};
}

double pipeline_sigma_gg(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b,
                         const quad::Tolerance& tol) {
  TwoLevelAtom ga = a;
  TwoLevelAtom gb = b;
  // the mode couplings already contain the dipoles; keep the atoms apart formally
  ga.state = gb.state = AtomState::ground;
  return sigma_gg(ga, gb, ModeCoupling(model), tol).shift();
}

RandomSystem random_system(std::mt19937_64& rng, int modes, double coupling, int truncation) {
  std::uniform_real_distribution<double> frequency(0.5, 3.0);
  std::uniform_real_distribution<double> g(-coupling, coupling);
  std::uniform_real_distribution<double> wa(0.8, 1.2);
  std::uniform_real_distribution<double> wb(1.3, 1.8);

  RandomSystem s;
  s.model.truncation = truncation;
  for (int k = 0; k < modes; ++k) s.model.modes.push_back({frequency(rng), g(rng), g(rng)});
  s.a.omega = wa(rng);
  s.b.omega = wb(rng);
  s.b.position = Eigen::Vector3d::UnitZ();
  s.model.validate();
  return s;
}

}  // namespace casimir::oracle
