#include "ppwpi/pulse_propagators.hpp"

#include <cmath>

namespace ppwpi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx order2_prefactor(const PulseParams& pulse, const ModelParams& params) {
  const double k = pulse.amplitude * params.dipole_m / 2.0;
  return cplx(-k * k, 0.0); // (i E m / 2)^2
}

// Lookup of I(c + omega d1, c + omega d2) over level differences
// d1, d2 in [-(n-1), n-1].
struct IntegralTable {
  int n;
  std::vector<cplx> v;
  IntegralTable(double c, double omega, double sigma, int n_) : n(n_), v((2 * n - 1) * (2 * n - 1)) {
    for (int d1 = -(n - 1); d1 <= n - 1; ++d1)
      for (int d2 = -(n - 1); d2 <= n - 1; ++d2)
        v[(d1 + n - 1) * (2 * n - 1) + (d2 + n - 1)] =
            nested_gaussian_integral({c + omega * d1, c + omega * d2, sigma});
  }
  cplx operator()(int d1, int d2) const {
    return v[(d1 + n - 1) * (2 * n - 1) + (d2 + n - 1)];
  }
};

// Single-mode second-order kernel with an intermediate completeness sum:
//   K[nu, nubar] = sum_n F(nu, n) F(n, nubar) I(c + w(n - nubar), c + w(n - nu)).
// The same shape serves GSB (c = eps - Omega), SE (c = Omega - eps) and ESA
// (c = eps2 - eps - Omega); the FC table is symmetric so the ground/displaced
// index order never matters.
Eigen::MatrixXcd same_site_kernel(double c, const PulseParams& pulse,
                                  const ModelParams& params, const Eigen::MatrixXd& f,
                                  double* max_tail_ratio) {
  const int n = static_cast<int>(f.rows());
  const IntegralTable table(c, params.omega, pulse.sigma, n);
  Eigen::MatrixXcd k(n, n);
  double worst = 0.0;
  for (int nu = 0; nu < n; ++nu)
    for (int nubar = 0; nubar < n; ++nubar) {
      cplx acc = 0.0;
      cplx last = 0.0;
      for (int m = 0; m < n; ++m) {
        last = f(nu, m) * f(m, nubar) * table(m - nubar, m - nu);
        acc += last;
      }
      k(nu, nubar) = acc;
      if (acc != 0.0) worst = std::max(worst, std::abs(last) / std::abs(acc));
    }
  if (max_tail_ratio) *max_tail_ratio = worst;
  return k;
}

// Place a single-mode kernel on the given mode, Kronecker delta on the other
// (nu_a-major ordering).
Eigen::MatrixXcd kron_with_identity(const Eigen::MatrixXcd& k, Mode mode,
                                    const VibronicBasis& basis) {
  const int n = basis.n_max();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int nu = 0; nu < n; ++nu)
    for (int nubar = 0; nubar < n; ++nubar)
      for (int spec = 0; spec < n; ++spec) {
        if (mode == Mode::a)
          out(basis.index(nu, spec), basis.index(nubar, spec)) = k(nu, nubar);
        else
          out(basis.index(spec, nu), basis.index(spec, nubar)) = k(nu, nubar);
      }
  return out;
}

} // namespace

PropagatorBlock first_order_up(const PulseParams& pulse, const ModelParams& params,
                               const VibronicBasis& basis, Site site) {
  pulse.validate();
  params.validate();
  const int n = basis.n_max();
  const Eigen::MatrixXd f = fc_table(n, params.delta);
  const double eps = params.site_energy(site);
  const cplx pref = cplx(0.0, pulse.amplitude * params.dipole_m / 2.0) *
                    std::polar(1.0, pulse.phase);
  Eigen::MatrixXcd k(n, n);
  for (int nu = 0; nu < n; ++nu)
    for (int nubar = 0; nubar < n; ++nubar) {
      const double det = params.omega * (nu - nubar) + eps - pulse.omega_c;
      k(nu, nubar) = f(nu, nubar) * std::sqrt(kTwoPi) * pulse.sigma *
                     std::exp(-pulse.sigma * pulse.sigma * det * det / 2.0);
    }
  PropagatorBlock b;
  b.from_manifold = Manifold::ground;
  b.to_manifold = Manifold::one_exciton;
  b.from_site = b.to_site = site;
  b.order = 1;
  b.matrix = pref * kron_with_identity(k, site_mode(site), basis);
  return b;
}

PropagatorBlock first_order_down(const PulseParams& pulse, const ModelParams& params,
                                 const VibronicBasis& basis, Site site) {
  PulseParams phase_free = pulse;
  phase_free.phase = 0.0;
  PropagatorBlock up = first_order_up(phase_free, params, basis, site);
  PropagatorBlock b;
  b.from_manifold = Manifold::one_exciton;
  b.to_manifold = Manifold::ground;
  b.from_site = b.to_site = site;
  b.order = 1;
  b.matrix = std::polar(1.0, -pulse.phase) * up.matrix.adjoint();
  return b;
}

PropagatorBlock gsb_block(const PulseParams& pulse, const ModelParams& params,
                          const VibronicBasis& basis, Site site) {
  pulse.validate();
  params.validate();
  const Eigen::MatrixXd f = fc_table(basis.n_max(), params.delta);
  PropagatorBlock b;
  b.from_manifold = b.to_manifold = Manifold::ground;
  b.from_site = b.to_site = site;
  const double c = params.site_energy(site) - pulse.omega_c;
  const Eigen::MatrixXcd k = same_site_kernel(c, pulse, params, f, &b.max_tail_ratio);
  b.matrix = order2_prefactor(pulse, params) * kron_with_identity(k, site_mode(site), basis);
  return b;
}

PropagatorBlock se_block(const PulseParams& pulse, const ModelParams& params,
                         const VibronicBasis& basis, Site site) {
  pulse.validate();
  params.validate();
  const Eigen::MatrixXd f = fc_table(basis.n_max(), params.delta);
  PropagatorBlock b;
  b.from_manifold = b.to_manifold = Manifold::one_exciton;
  b.from_site = b.to_site = site;
  const double c = pulse.omega_c - params.site_energy(site);
  const Eigen::MatrixXcd k = same_site_kernel(c, pulse, params, f, &b.max_tail_ratio);
  b.matrix = order2_prefactor(pulse, params) * kron_with_identity(k, site_mode(site), basis);
  return b;
}

PropagatorBlock esa_block(const PulseParams& pulse, const ModelParams& params,
                          const VibronicBasis& basis, Site site) {
  pulse.validate();
  params.validate();
  const Eigen::MatrixXd f = fc_table(basis.n_max(), params.delta);
  PropagatorBlock b;
  b.from_manifold = b.to_manifold = Manifold::one_exciton;
  b.from_site = b.to_site = site;
  const double c = (params.eps2 - params.site_energy(site)) - pulse.omega_c;
  const Eigen::MatrixXcd k = same_site_kernel(c, pulse, params, f, &b.max_tail_ratio);
  // the pathway through the doubly excited state touches the mode displaced
  // by the *other* site; the site's own mode rides along unchanged
  b.matrix =
      order2_prefactor(pulse, params) * kron_with_identity(k, site_mode(other_site(site)), basis);
  return b;
}

PropagatorBlock se_cross_block(const PulseParams& pulse, const ModelParams& params,
                               const VibronicBasis& basis, Site from, Site to) {
  pulse.validate();
  params.validate();
  if (from == to) throw std::invalid_argument("se_cross_block: sites must differ");
  const int n = basis.n_max();
  const Eigen::MatrixXd f = fc_table(n, params.delta);
  const Mode mf = site_mode(from);
  const Mode mt = site_mode(to);
  // alpha = Omega - eps_from + w (nu[mf] - nubar[mf])   (de-excitation)
  // beta  = Omega - eps_to   + w (nubar[mt] - nu[mt])   (re-excitation)
  const IntegralTable table_from(pulse.omega_c - params.site_energy(from), params.omega,
                                 pulse.sigma, n);
  PropagatorBlock b;
  b.from_manifold = b.to_manifold = Manifold::one_exciton;
  b.from_site = from;
  b.to_site = to;
  const cplx pref = order2_prefactor(pulse, params);
  b.matrix.resize(basis.size(), basis.size());
  const double shift =
      (params.site_energy(to) - params.site_energy(from)) / params.omega;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j) {
      const int d_from = basis.level(i, mf) - basis.level(j, mf);
      const int d_to = basis.level(j, mt) - basis.level(i, mt);
      // beta = Omega - eps_to + w d_to = Omega - eps_from + w (d_to - shift)
      cplx val;
      if (shift == 0.0) {
        val = table_from(d_from, d_to);
      } else {
        val = nested_gaussian_integral(
            {pulse.omega_c - params.site_energy(from) + params.omega * d_from,
             pulse.omega_c - params.site_energy(to) + params.omega * d_to, pulse.sigma});
      }
      b.matrix(i, j) = pref * f(basis.level(i, mf), basis.level(j, mf)) *
                       f(basis.level(i, mt), basis.level(j, mt)) * val;
    }
  return b;
}

PropagatorBlock esa_cross_block(const PulseParams& pulse, const ModelParams& params,
                                const VibronicBasis& basis, Site from, Site to) {
  pulse.validate();
  params.validate();
  if (from == to) throw std::invalid_argument("esa_cross_block: sites must differ");
  const int n = basis.n_max();
  const Eigen::MatrixXd f = fc_table(n, params.delta);
  const Mode mf = site_mode(from);
  const Mode mt = site_mode(to);
  // alpha = (eps2 - eps_from) - Omega + w (nu[mt] - nubar[mt])  (up to manifold 2)
  // beta  = (eps2 - eps_to)   - Omega + w (nubar[mf] - nu[mf])  (down to `to`)
  PropagatorBlock b;
  b.from_manifold = b.to_manifold = Manifold::one_exciton;
  b.from_site = from;
  b.to_site = to;
  const cplx pref = order2_prefactor(pulse, params);
  b.matrix.resize(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j) {
      const int d_up = basis.level(i, mt) - basis.level(j, mt);
      const int d_down = basis.level(j, mf) - basis.level(i, mf);
      const cplx val = nested_gaussian_integral(
          {(params.eps2 - params.site_energy(from)) - pulse.omega_c + params.omega * d_up,
           (params.eps2 - params.site_energy(to)) - pulse.omega_c + params.omega * d_down,
           pulse.sigma});
      b.matrix(i, j) = pref * f(basis.level(i, mf), basis.level(j, mf)) *
                       f(basis.level(i, mt), basis.level(j, mt)) * val;
    }
  return b;
}

} // namespace ppwpi
