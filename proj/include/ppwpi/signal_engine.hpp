#ifndef PPWPI_SIGNAL_ENGINE_HPP
#define PPWPI_SIGNAL_ENGINE_HPP

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ppwpi/pulse_propagators.hpp"
#include "ppwpi/vibronic_model.hpp"

namespace ppwpi {

enum class PulseId { control, pump, probe };

/// One pulse action inside a pathway. `from`/`to` both name the site for
/// the single-site kinds (up, down, gsb2).
struct PathwayAction {
  enum class Kind { up, down, gsb2, se2, esa2 };
  PulseId pulse = PulseId::pump;
  Kind kind = Kind::up;
  Site from = Site::one;
  Site to = Site::one;
};

struct Projection {
  Manifold manifold = Manifold::one_exciton;
  Site site = Site::one;
};

/// Ordered list of pulse actions (pulse arrival order: control, pump,
/// probe) plus the final projection applied by the overlap step.
struct PathwaySpec {
  std::vector<PathwayAction> actions;
  Projection projection;
};

/// Interpulse delays, measured center to center: control->pump and
/// pump->probe.
struct Delays {
  double t_pa = 0.0;
  double t_ca = 0.0;
  void validate() const;
};

/// Relabeling 1 <-> 1' together with modes a <-> b; maps a homodimer
/// pathway onto its mirror (tests).
PathwaySpec relabel_sites(const PathwaySpec& spec);

class DegenerateSignalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The eight stimulated-emission pump-probe overlaps in the fixed table
/// order; the first/second/eighth/fourth feed the denominator combination.
struct PpOverlaps {
  std::array<cplx, 8> terms{};
};

/// The eight distinct pump-probe-difference overlaps. Order: the six
/// numerator overlaps, then the two control-same-site denominator-only
/// overlaps (ket-side, bra-side).
struct PpdOverlaps {
  std::array<cplx, 8> terms{};
};

/// Hard-coded isotropic orientational coefficient tables for the four
/// signal combinations, applied to Re(overlap) sums. Kept separate from the
/// engine so synthetic injections can validate the coefficients alone.
namespace orientation {

double pp_numerator(const std::array<cplx, 8>& terms);   // HH - HV
double pp_denominator(const std::array<cplx, 4>& terms); // HH + 2HV
double ppd_numerator(const std::array<cplx, 6>& terms);  // VHH - VHV
double ppd_denominator(const std::array<cplx, 8>& terms);// VHH + 2VHV

std::array<cplx, 4> pp_denominator_terms(const PpOverlaps& t);
std::array<cplx, 6> ppd_numerator_terms(const PpdOverlaps& t);
std::array<cplx, 8> ppd_denominator_terms(const PpdOverlaps& t);

} // namespace orientation

/// Bra/ket pathway pairs behind PpOverlaps and PpdOverlaps.
std::array<std::pair<PathwaySpec, PathwaySpec>, 8> pp_pathways();
std::array<std::pair<PathwaySpec, PathwaySpec>, 8> ppd_pathways();

struct EngineOptions {
  /// Anisotropy denominators smaller than this times the largest overlap
  /// magnitude raise DegenerateSignalError.
  double denominator_floor_rel = 1e-12;
};

/// Evaluates pathway overlaps and polarization signal combinations for one
/// model/pulse configuration. Immutable after construction; const methods
/// are safe to call concurrently.
class SignalEngine {
public:
  /// `free_evolution` may be null when every evaluation uses t_ca = 0; it
  /// can be shared between engines built on the same model and basis.
  SignalEngine(const ModelParams& model, int n_max, const PulseParams& pump,
               const PulseParams& probe, std::optional<PulseParams> control = {},
               std::shared_ptr<const OneExcitonPropagator> free_evolution = nullptr,
               EngineOptions opts = {});

  const VibronicBasis& basis() const { return basis_; }
  const ModelParams& model() const { return model_; }
  /// Worst intermediate-sum truncation ratio across the blocks built at
  /// construction.
  double max_tail_ratio() const { return max_tail_ratio_; }

  PathwayState evaluate_pathway(const PathwaySpec& spec, const Delays& delays) const;
  cplx overlap(const PathwaySpec& bra, const PathwaySpec& ket, const Delays& delays) const;

  PpOverlaps pp_overlaps(double t_ca) const;
  PpdOverlaps ppd_overlaps(double t_pa, double t_ca) const;

  double se_hh_minus_hv(double t_ca) const;
  double se_hh_plus_2hv(double t_ca) const;
  double anisotropy_pp(double t_ca) const;
  /// Zero-delay closed form 0.4 + 0.3 Re(cross)/Re(direct) built from the
  /// two surviving overlaps.
  double anisotropy_pp_closed_form_zero_delay() const;

  double ppd_vhh_minus_vhv(double t_pa, double t_ca) const;
  double ppd_vhh_plus_2vhv(double t_pa, double t_ca) const;
  double anisotropy_ppd(double t_pa, double t_ca) const;
  /// Zero-delay closed form 7 / (13 + 9 ratio) from the four overlaps that
  /// keep the probe on the pumped site; exact only when the cross-probe
  /// overlaps vanish (red-shifted probe makes them negligible).
  double anisotropy_ppd_closed_form_zero_delay(double t_pa) const;

private:
  struct LocalBlocks;

  const Eigen::MatrixXd& to_shared(Site s) const {
    return s == Site::one ? v1_ : v1p_;
  }
  const PulseParams& pulse_params(PulseId id) const;
  PropagatorBlock build_local(PulseId id, PathwayAction::Kind kind, Site from, Site to) const;
  const Eigen::MatrixXcd* cached_local(PulseId id, PathwayAction::Kind kind, Site from,
                                       Site to) const;
  void evolve(PathwayState& state, double t) const;
  void apply_action(PathwayState& state, const PathwayAction& action) const;
  double ratio_or_throw(double num, double den, double scale) const;

  ModelParams model_;
  VibronicBasis basis_;
  PulseParams pump_, probe_;
  std::optional<PulseParams> control_;
  std::shared_ptr<const OneExcitonPropagator> uex_;
  EngineOptions opts_;
  Eigen::MatrixXd v1_, v1p_; // site-local -> shared ground-mode basis
  // blocks used by the standard signal tables, built eagerly
  Eigen::MatrixXcd pump_up_[2];
  Eigen::MatrixXcd probe_se_[2][2]; // [from][to]
  Eigen::MatrixXcd control_gsb_[2];
  double max_tail_ratio_ = 0.0;
};

enum class SweepMode { pp, ppd_impulsive_control, ppd_finite_control };

struct SweepPoint {
  double sigma_a = 0.0;
  double sigma_c = 0.0;
  double r = 0.0;
};

/// Anisotropy at zero pump-probe delay for each (sigma_A, sigma_C) grid
/// point. Points are independent and dispatched to `threads` workers;
/// results keep grid order. The impulsive-control mode replaces the control
/// duration by T_vib/200 with the pulse area held fixed.
std::vector<SweepPoint> duration_sweep(const ModelParams& model, int n_max,
                                       const PulseParams& pump, const PulseParams& probe,
                                       const std::optional<PulseParams>& control,
                                       double t_pa,
                                       std::span<const std::pair<double, double>> grid,
                                       SweepMode mode, int threads = 1);

} // namespace ppwpi

#endif
