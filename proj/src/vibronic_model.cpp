#include "ppwpi/vibronic_model.hpp"

#include <cmath>

namespace ppwpi {

void ModelParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be > 0");
  if (delta < 0.0) throw std::invalid_argument("ModelParams: delta must be >= 0");
  if (!(dipole_m > 0.0)) throw std::invalid_argument("ModelParams: dipole m must be > 0");
  for (double v : {omega, delta, eps1, eps1p, eps2, coupling_j, dipole_m})
    if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: non-finite field");
}

void PulseParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("PulseParams: sigma must be > 0");
  for (double v : {amplitude, sigma, omega_c, t_center, phase})
    if (!std::isfinite(v)) throw std::invalid_argument("PulseParams: non-finite field");
}

double fc_overlap(int nu_g, int nu_e, double displacement) {
  constexpr int kLevelCap = 4096;
  if (nu_g < 0 || nu_e < 0 || nu_g >= kLevelCap || nu_e >= kLevelCap)
    throw std::invalid_argument("fc_overlap: level cap exceeded");
  const double delta = displacement / std::numbers::sqrt2;
  const int n = std::max(nu_g, nu_e) + 1;
  return fc_table(n, delta)(nu_g, nu_e);
}

Eigen::MatrixXd fc_table(int n, double delta) {
  Eigen::MatrixXd f(n, n);
  f(0, 0) = std::exp(-delta * delta / 2.0);
  for (int m = 1; m < n; ++m) f(m, 0) = delta * f(m - 1, 0) / std::sqrt(double(m));
  for (int k = 1; k < n; ++k) {
    f(0, k) = delta * f(0, k - 1) / std::sqrt(double(k));
    for (int m = 1; m < n; ++m)
      f(m, k) = (delta * f(m - 1, k) - std::sqrt(double(k)) * f(m - 1, k - 1)) /
                std::sqrt(double(m));
  }
  return f;
}

Eigen::MatrixXd fc_matrix(const VibronicBasis& basis, DisplacedMode mode, double delta) {
  const int n = basis.n_max();
  const Eigen::MatrixXd f = fc_table(n, delta);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (int na = 0; na < n; ++na)
    for (int nb = 0; nb < n; ++nb)
      for (int ma = 0; ma < n; ++ma)
        for (int mb = 0; mb < n; ++mb) {
          double v = 0.0;
          switch (mode) {
            case DisplacedMode::a: v = (nb == mb) ? f(na, ma) : 0.0; break;
            case DisplacedMode::b: v = (na == ma) ? f(nb, mb) : 0.0; break;
            case DisplacedMode::both: v = f(na, ma) * f(nb, mb); break;
          }
          if (v != 0.0) out(basis.index(na, nb), basis.index(ma, mb)) = v;
        }
  return out;
}

Eigen::VectorXd manifold_energies(const ModelParams& params, const VibronicBasis& basis,
                                  EnergySurface surface) {
  double offset = 0.0;
  switch (surface) {
    case EnergySurface::ground: offset = 0.0; break;
    case EnergySurface::site1: offset = params.eps1; break;
    case EnergySurface::site1p: offset = params.eps1p; break;
    case EnergySurface::two_exciton: offset = params.eps2; break;
  }
  Eigen::VectorXd e(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    e(i) = offset + params.omega * (basis.level_a(i) + basis.level_b(i));
  return e;
}

Eigen::VectorXcd ground_propagator(const ModelParams& params, const VibronicBasis& basis,
                                   double t) {
  Eigen::VectorXcd phases(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const double e = params.omega * (basis.level_a(i) + basis.level_b(i));
    phases(i) = std::polar(1.0, -e * t);
  }
  return phases;
}

namespace {

// Site vibronic Hamiltonian in the shared ground-mode basis: the displaced
// mode contributes omega(n - delta(a + a+) + delta^2), the other mode
// omega n, plus the electronic offset.
Eigen::MatrixXd site_hamiltonian(const ModelParams& p, const VibronicBasis& basis,
                                 Mode displaced, double eps) {
  const int n = basis.n_max();
  const int b = basis.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(b, b);
  for (int i = 0; i < b; ++i) {
    const int na = basis.level_a(i);
    const int nb = basis.level_b(i);
    h(i, i) = eps + p.omega * (na + nb) + p.omega * p.delta * p.delta;
    const int nd = (displaced == Mode::a) ? na : nb;
    if (nd + 1 < n) {
      const int j = (displaced == Mode::a) ? basis.index(na + 1, nb) : basis.index(na, nb + 1);
      const double c = -p.omega * p.delta * std::sqrt(double(nd + 1));
      h(i, j) = c;
      h(j, i) = c;
    }
  }
  return h;
}

} // namespace

OneExcitonPropagator::OneExcitonPropagator(const ModelParams& params,
                                           const VibronicBasis& basis)
    : block_(basis.size()) {
  params.validate();
  const int b = block_;
  ham_ = Eigen::MatrixXd::Zero(2 * b, 2 * b);
  ham_.topLeftCorner(b, b) = site_hamiltonian(params, basis, Mode::a, params.eps1);
  ham_.bottomRightCorner(b, b) = site_hamiltonian(params, basis, Mode::b, params.eps1p);
  ham_.topRightCorner(b, b) = params.coupling_j * Eigen::MatrixXd::Identity(b, b);
  ham_.bottomLeftCorner(b, b) = params.coupling_j * Eigen::MatrixXd::Identity(b, b);
  if ((ham_ - ham_.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw std::logic_error("OneExcitonPropagator: non-Hermitian assembly");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("OneExcitonPropagator: eigendecomposition failed");
  vecs_ = es.eigenvectors();
  vals_ = es.eigenvalues();
}

void OneExcitonPropagator::apply(Eigen::VectorXcd& c1, Eigen::VectorXcd& c1p,
                                 double t) const {
  if (t == 0.0) return;
  Eigen::VectorXcd full(2 * block_);
  full.head(block_) = c1;
  full.tail(block_) = c1p;
  Eigen::VectorXcd modal = vecs_.transpose() * full;
  for (int i = 0; i < modal.size(); ++i) modal(i) *= std::polar(1.0, -vals_(i) * t);
  full = vecs_ * modal;
  c1 = full.head(block_);
  c1p = full.tail(block_);
}

Eigen::MatrixXcd OneExcitonPropagator::matrix(double t) const {
  const int d = 2 * block_;
  if (t == 0.0) return Eigen::MatrixXcd::Identity(d, d);
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, -vals_(i) * t);
  return vecs_ * phases.asDiagonal() * vecs_.transpose();
}

PathwayState PathwayState::vibronic_ground(const VibronicBasis& basis) {
  PathwayState s;
  s.manifold = Manifold::ground;
  s.amp = Eigen::VectorXcd::Zero(basis.size());
  s.amp(basis.index(0, 0)) = 1.0;
  return s;
}

} // namespace ppwpi
