#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "casimir/coupling.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/self_energy.hpp"

namespace casimir::oracle {

/// One field mode with real, dipole-contracted couplings g(r_A), g(r_B).
struct FieldMode {
  double omega = 1.0;
  double g_a = 0.0;
  double g_b = 0.0;
};

/// Finite set of field modes, H_F = sum_k omega_k a_k^+ a_k and
/// H_AF = -sum_{n=A,B} (sigma_n + sigma_n^+) sum_k g_k(r_n) (a_k + a_k^+).
struct ModeModel {
  std::vector<FieldMode> modes;
  /// Maximum total photon number kept in the Hilbert space.
  int truncation = 2;
  /// Include the counter-rotating terms sigma^+ a^+ and sigma a.
  bool counter_rotating = true;

  /// Frequencies > 0 and pairwise distinct, 1..32 modes, truncation >= 2.
  void validate() const;
};

/// d_r(omega) = sum_k g_k(r_B) g_k(r_A) [1/(w_k - w - i0+) + 1/(w_k + w - i0+)].
/// Throws SingularityError at omega = +-w_k on the real axis.
cplx mode_green(const ModeModel& model, cplx omega);

/// The mode-sum propagator as a PairCoupling, so the self-energy pipeline can run on it.
class ModeCoupling final : public PairCoupling {
 public:
  explicit ModeCoupling(ModeModel model);

  cplx squared(cplx omega) const override;
  double modulus_squared(double omega) const override;
  double decay_scale() const override;

  const ModeModel& model() const noexcept { return model_; }

 private:
  ModeModel model_;
};

struct PTResult {
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
  /// e4 minus the fourth-order shifts of each atom coupled alone: the A-B cross term.
  double connected_e4 = 0.0;
};

/// Rayleigh-Schroedinger perturbation theory through fourth order for |g_A g_B; vac> on the
/// explicit truncated Hamiltonian. Only the Bohr frequencies of the atoms are used.
PTResult rspt4_ground_shift(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b);

/// Lowest eigenvalue of H_0 + lambda H_AF by dense diagonalisation. Bare ground energy is 0.
double ed_ground_energy(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b,
                        double lambda, std::size_t max_dimension = 4096);

/// Hilbert-space dimension: 4 x number of photon configurations with <= truncation photons.
std::size_t hilbert_dimension(const ModeModel& model);

struct QuarticFit {
  double coefficient = 0.0;
  double residual = 0.0;
};

/// Fits E_AB(l) - E_A(l) - E_B(l) = c4 l^4 + c6 l^6 + c8 l^8 to exact energies at the given
/// couplings and returns c4.
QuarticFit fit_connected_quartic(const ModeModel& model, const TwoLevelAtom& a,
                                 const TwoLevelAtom& b, std::span<const double> lambdas,
                                 std::size_t max_dimension = 4096);

/// Green-function Sigma^gg with the mode-sum propagator.
double pipeline_sigma_gg(const ModeModel& model, const TwoLevelAtom& a, const TwoLevelAtom& b,
                         const quad::Tolerance& tol = {});

/// Model with the couplings of atom A (resp. B) switched off.
ModeModel without_atom_a(ModeModel model);
ModeModel without_atom_b(ModeModel model);

struct RandomSystem {
  ModeModel model;
  TwoLevelAtom a;
  TwoLevelAtom b;
};

/// Generic random model: w_k in [0.5, 3], |g| <= coupling, w_A in [0.8, 1.2], w_B in [1.3, 1.8].
RandomSystem random_system(std::mt19937_64& rng, int modes, double coupling = 0.3,
                           int truncation = 2);

}  // namespace casimir::oracle
