#ifndef PPWPI_VIBRONIC_MODEL_HPP
#define PPWPI_VIBRONIC_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "ppwpi/special_functions.hpp"

namespace ppwpi {

enum class Site { one, one_prime };
enum class Mode { a, b };
enum class Manifold { ground, one_exciton, two_exciton };
enum class DisplacedMode { a, b, both };
enum class EnergySurface { ground, site1, site1p, two_exciton };
enum class Polarization { horizontal, vertical };

constexpr Site other_site(Site s) {
  return s == Site::one ? Site::one_prime : Site::one;
}

/// Excitation of site 1 displaces mode a; site 1' displaces mode b; the
/// two-exciton state displaces both.
constexpr Mode site_mode(Site s) { return s == Site::one ? Mode::a : Mode::b; }

/// Dimer energetics. Energies carry no ZPE offset (equal mode frequencies
/// everywhere, so the zero-point shift cancels in every detuning);
/// eps1/eps1p are minimum-to-minimum gaps. delta is the dimensionless
/// coupling (Huang-Rhys factor S = delta^2, minimum shift x0 = sqrt(2) delta,
/// vertical gap at the ground equilibrium eps + delta^2 omega).
struct ModelParams {
  double omega = 1.0;    // vibrational angular frequency
  double delta = 0.0;    // dimensionless displacement parameter
  double eps1 = 0.0;     // site-1 excitation energy
  double eps1p = 0.0;    // site-1' excitation energy
  double eps2 = 0.0;     // two-exciton energy
  double coupling_j = 0.0;
  double dipole_m = 1.0; // transition dipole magnitude

  void validate() const;
  bool is_homodimer() const { return eps1 == eps1p; }
  double site_energy(Site s) const { return s == Site::one ? eps1 : eps1p; }
  double vibrational_period() const { return 2.0 * std::numbers::pi / omega; }
};

/// One Gaussian pulse: envelope exp(-(t - t_center)^2 / 2 sigma^2), carrier
/// omega_c, constant phase. The constant phase enters first-order blocks as
/// exp(+i phase) on up transitions and cancels in every second-order
/// same-pulse block and in every signal combination.
struct PulseParams {
  double amplitude = 1.0;
  double sigma = 1.0;
  double omega_c = 0.0;
  double t_center = 0.0;
  double phase = 0.0;
  Polarization polarization = Polarization::horizontal;

  void validate() const;
};

/// Truncated two-mode product basis (nu_a, nu_b), nu in [0, n_max), with
/// the fixed nu_a-major linear index nu_a * n_max + nu_b.
class VibronicBasis {
public:
  explicit VibronicBasis(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("VibronicBasis: n_max must be >= 1");
  }
  int n_max() const { return n_max_; }
  int size() const { return n_max_ * n_max_; }
  int index(int nu_a, int nu_b) const { return nu_a * n_max_ + nu_b; }
  int level_a(int idx) const { return idx / n_max_; }
  int level_b(int idx) const { return idx % n_max_; }
  int level(int idx, Mode m) const { return m == Mode::a ? level_a(idx) : level_b(idx); }

private:
  int n_max_;
};

/// One-dimensional Franck-Condon overlap <nu_g | nu_e> between an
/// undisplaced oscillator and one shifted by the dimensionless minimum
/// displacement x0 (equal frequencies). Phase convention: <0|1> carries the
/// sign of +x0; with it the single-mode table is symmetric.
double fc_overlap(int nu_g, int nu_e, double displacement);

/// Full single-mode table f(m, n) = <m_g | n_e> for levels < n, shift
/// x0 = sqrt(2) delta, by the stable two-term recursion seeded from
/// <0|0> = exp(-delta^2/2).
Eigen::MatrixXd fc_table(int n, double delta);

/// Two-mode overlap matrix over the basis: displaced factor on the named
/// mode(s), Kronecker delta on the rest. "both" serves the two-exciton
/// manifold.
Eigen::MatrixXd fc_matrix(const VibronicBasis& basis, DisplacedMode mode, double delta);

/// eps_offset + omega (nu_a + nu_b) over the basis.
Eigen::VectorXd manifold_energies(const ModelParams& params, const VibronicBasis& basis,
                                  EnergySurface surface);

/// Diagonal ground-manifold propagator phases exp(-i omega (nu_a + nu_b) t).
Eigen::VectorXcd ground_propagator(const ModelParams& params, const VibronicBasis& basis,
                                   double t);

/// exp(-i H_ex t) on the one-exciton manifold in the shared ground-mode
/// product basis: diagonal site blocks are the site vibronic Hamiltonians
/// (displaced mode expressed through ladder operators), off-diagonal blocks
/// J * identity. The dense symmetric eigendecomposition happens once, in
/// the constructor.
class OneExcitonPropagator {
public:
  OneExcitonPropagator(const ModelParams& params, const VibronicBasis& basis);

  /// Evolve the (site-1, site-1') component pair in place. t = 0 is an
  /// exact no-op.
  void apply(Eigen::VectorXcd& c1, Eigen::VectorXcd& c1p, double t) const;

  /// Full 2B x 2B propagator matrix (tests).
  Eigen::MatrixXcd matrix(double t) const;

  const Eigen::MatrixXd& hamiltonian() const { return ham_; }

private:
  int block_;
  Eigen::MatrixXd ham_;
  Eigen::MatrixXd vecs_;
  Eigen::VectorXd vals_;
};

/// A bra- or ket-side perturbative wave packet. One-exciton states carry a
/// (site-1, site-1') pair of amplitude vectors in the shared ground-mode
/// basis; ground and two-exciton states a single vector.
struct PathwayState {
  Manifold manifold = Manifold::ground;
  Eigen::VectorXcd amp;   // ground / two-exciton amplitudes
  Eigen::VectorXcd amp1;  // one-exciton site-1 component
  Eigen::VectorXcd amp1p; // one-exciton site-1' component

  static PathwayState vibronic_ground(const VibronicBasis& basis);
  const Eigen::VectorXcd& site_component(Site s) const {
    return s == Site::one ? amp1 : amp1p;
  }
};

} // namespace ppwpi

#endif
