#ifndef PPWPI_PULSE_PROPAGATORS_HPP
#define PPWPI_PULSE_PROPAGATORS_HPP

#include <Eigen/Dense>

#include "ppwpi/vibronic_model.hpp"

namespace ppwpi {

/// One first- or second-order pulse action between two electronic
/// manifolds, as a complex matrix over the vibronic basis in the
/// site-local eigenbases (each one-exciton site uses its own displaced-mode
/// eigenbasis; ground and two-exciton use theirs).
///
/// Second-order same-pulse blocks never read the pulse's constant phase;
/// first-order blocks carry exp(+i phase) (up) / exp(-i phase) (down).
struct PropagatorBlock {
  Manifold from_manifold = Manifold::ground;
  Manifold to_manifold = Manifold::ground;
  Site from_site = Site::one;
  Site to_site = Site::one;
  int order = 2;
  Eigen::MatrixXcd matrix;

  /// Largest relative contribution of the last intermediate level to any
  /// accumulated element; > 1e-10 means the completeness sum was visibly
  /// truncated at this n_max.
  double max_tail_ratio = 0.0;
  bool truncation_warning() const { return max_tail_ratio > 1e-10; }
};

/// Ground -> one-exciton site s, matrix element
///   (i E m / 2) e^{i phi} <nu|nubar>_FC sqrt(2 pi) sigma exp(-sigma^2 D^2/2),
/// D = omega(nu - nubar) + eps_s - Omega on the site's displaced mode,
/// Kronecker delta on the untouched mode.
PropagatorBlock first_order_up(const PulseParams& pulse, const ModelParams& params,
                               const VibronicBasis& basis, Site site);

/// Adjoint partner of first_order_up: equal to e^{-i phi} times the
/// conjugate transpose of the phase-free up block.
PropagatorBlock first_order_down(const PulseParams& pulse, const ModelParams& params,
                                 const VibronicBasis& basis, Site site);

/// Second-order ground -> ground bleach action through one-exciton site s.
PropagatorBlock gsb_block(const PulseParams& pulse, const ModelParams& params,
                          const VibronicBasis& basis, Site site);

/// Second-order stimulated-emission action, site s -> same site through the
/// ground manifold.
PropagatorBlock se_block(const PulseParams& pulse, const ModelParams& params,
                         const VibronicBasis& basis, Site site);

/// Stimulated-emission action from one site to the other (de-excite `from`,
/// re-excite `to`); single Franck-Condon product per element, no
/// intermediate sum.
PropagatorBlock se_cross_block(const PulseParams& pulse, const ModelParams& params,
                               const VibronicBasis& basis, Site from, Site to);

/// Second-order excited-state-absorption action, site s -> same site through
/// the two-exciton manifold.
PropagatorBlock esa_block(const PulseParams& pulse, const ModelParams& params,
                          const VibronicBasis& basis, Site site);

/// Excited-state-absorption action from one site to the other through the
/// two-exciton manifold.
PropagatorBlock esa_cross_block(const PulseParams& pulse, const ModelParams& params,
                                const VibronicBasis& basis, Site from, Site to);

} // namespace ppwpi

#endif
