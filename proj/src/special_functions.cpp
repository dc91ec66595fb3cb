#include "ppwpi/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ppwpi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Trapezoidal step of the Poisson-summation Faddeeva evaluation.
// exp(-pi^2/h^2) ~ 7e-18 bounds the discretization error.
constexpr double kH = 0.5;
// exp(-t^2) < 1e-23 beyond |t| = 7.25; truncating there keeps the
// absolute sum error below 1e-16 for |z| <= ~20.
constexpr int kMidTerms = 15;  // nodes (k + 1/2) h, k = -15..14
constexpr int kIntTerms = 15;  // nodes k h, k = -15..15

cplx w_sum_midpoint(cplx z) {
  cplx s = 0.0;
  for (int k = -kMidTerms; k < kMidTerms; ++k) {
    const double t = (k + 0.5) * kH;
    s += std::exp(-t * t) / (z - t);
  }
  return s;
}

cplx w_sum_integer(cplx z) {
  cplx s = 0.0;
  for (int k = -kIntTerms; k <= kIntTerms; ++k) {
    const double t = k * kH;
    s += std::exp(-t * t) / (z - t);
  }
  return s;
}

// Maclaurin series of erf, adequate for |z| <= 1 where the alternating
// sum loses at most ~1 digit.
cplx erf_series(cplx z) {
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < 40; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum * (2.0 / kSqrtPi);
}

} // namespace

void NestedIntegralArgs::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("NestedIntegralArgs: sigma must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("NestedIntegralArgs: detunings must be finite");
}

cplx faddeeva_w(cplx z) {
  const double u = z.real();
  const double v = z.imag();
  if (v < 0.0)
    throw std::domain_error("faddeeva_w: argument must have Im z >= 0");

  // Near the real axis the correction term has poles on one node grid;
  // pick whichever grid keeps z farther from its own pole set.
  bool use_mid = true;
  if (v < 1.0) {
    const double frac = u / kH - std::floor(u / kH);
    const double dist_mid = std::abs(frac - 0.5);
    const double dist_int = std::min(frac, 1.0 - frac);
    use_mid = dist_mid >= dist_int;
  }

  cplx val = cplx(0.0, kH / kPi) * (use_mid ? w_sum_midpoint(z) : w_sum_integer(z));

  // Residue correction, present only while the m = -1 Poisson image pole
  // is crossed (Im z < pi/h). Beyond that height the term would diverge
  // and must be dropped.
  if (v < kPi / kH) {
    const cplx e = std::exp(-z * z);
    const cplx q = std::exp(cplx(0.0, -2.0 * kPi / kH) * z);
    val += use_mid ? 2.0 * e / (1.0 + q) : 2.0 * e / (1.0 - q);
  }
  return val;
}

cplx complex_erf(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("complex_erf: argument must be finite");

  // Exact odd symmetry: reduce to Re z > 0, or Re z == 0 with Im z >= 0.
  if (x < 0.0 || (x == 0.0 && y < 0.0)) return -complex_erf(-z);

  // |erf| ~ exp(y^2 - x^2) / (|z| sqrt(pi)) for dominant imaginary part.
  if (y * y - x * x > 700.0)
    throw ErfOverflowError("complex_erf: result exceeds double range");

  if (std::norm(z) <= 1.0) return erf_series(z);

  // erf(z) = 1 - exp(-z^2) w(iz); Im(iz) = Re z >= 0 after reduction.
  const cplx iz(-y, x);
  return 1.0 - std::exp(-z * z) * faddeeva_w(iz);
}

cplx nested_gaussian_integral(const NestedIntegralArgs& args) {
  args.validate();
  const double u = args.sigma * (args.alpha - args.beta) / 2.0;
  const double y = args.sigma * (args.alpha + args.beta) / 2.0;
  // pi s^2 exp(-u^2) [exp(-y^2) (1 - erf(iy))] with the bracket evaluated
  // as w(-y); bounded on the real axis, so no overflow for any detuning.
  return kPi * args.sigma * args.sigma * std::exp(-u * u) * faddeeva_w(cplx(-y, 0.0));
}

namespace {

// n-point Gauss-Legendre rule on [-1, 1] via Newton iteration.
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double p0 = 0.0, p1 = 0.0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        const double dp = n * (t * p0 - p1) / (t * t - 1.0);
        const double t1 = t - p0 / dp;
        if (std::abs(t1 - t) < 1e-16) {
          t = t1;
          break;
        }
        t = t1;
      }
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (t * p0 - p1) / (t * t - 1.0);
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

// Precomputed geometry for one resolution of the oracle, on s in [-L, L]
// (time scaled by sigma). Outer nodes double as inner prefix breakpoints.
struct OracleGrid {
  double L;
  int panels, order;
  std::vector<double> node;        // outer nodes, panel-major
  std::vector<double> weight;      // outer weights
  std::vector<double> edge;        // panel left edges
  std::vector<double> part_node;   // inner partial-panel nodes per outer node
  std::vector<double> part_weight; // matching weights

  OracleGrid(double L_, int panels_, int order_) : L(L_), panels(panels_), order(order_) {
    const GaussRule gl(order);
    const double hw = L / panels; // half of panel width (width = 2L/panels)
    node.resize(panels * order);
    weight.resize(panels * order);
    edge.resize(panels + 1);
    part_node.resize(panels * order * order);
    part_weight.resize(panels * order * order);
    for (int p = 0; p <= panels; ++p) edge[p] = -L + 2.0 * hw * p;
    for (int p = 0; p < panels; ++p) {
      const double c = 0.5 * (edge[p] + edge[p + 1]);
      for (int i = 0; i < order; ++i) {
        const int k = p * order + i;
        node[k] = c + hw * gl.x[i];
        weight[k] = hw * gl.w[i];
        // partial inner panel [edge[p], node[k]]
        const double pc = 0.5 * (edge[p] + node[k]);
        const double ph = 0.5 * (node[k] - edge[p]);
        for (int j = 0; j < order; ++j) {
          part_node[k * order + j] = pc + ph * gl.x[j];
          part_weight[k * order + j] = ph * gl.w[j];
        }
      }
    }
  }

  // J(a, b) = \iint_{s1 < s2, |s| <= L} exp(-s1^2/2 + i a s1) exp(-s2^2/2 - i b s2)
  cplx evaluate(double a, double b) const {
    const int n_nodes = panels * order;
    // inner integrand g1 at outer nodes (for full-panel prefix sums)
    std::vector<cplx> g1(n_nodes);
    for (int k = 0; k < n_nodes; ++k)
      g1[k] = std::exp(cplx(-0.5 * node[k] * node[k], a * node[k]));
    std::vector<cplx> panel_full(panels, 0.0);
    for (int p = 0; p < panels; ++p)
      for (int i = 0; i < order; ++i)
        panel_full[p] += weight[p * order + i] * g1[p * order + i];
    std::vector<cplx> prefix(panels + 1, 0.0);
    for (int p = 0; p < panels; ++p) prefix[p + 1] = prefix[p] + panel_full[p];

    cplx total = 0.0;
    for (int k = 0; k < n_nodes; ++k) {
      const int p = k / order;
      cplx partial = 0.0;
      for (int j = 0; j < order; ++j) {
        const double s = part_node[k * order + j];
        partial += part_weight[k * order + j] * std::exp(cplx(-0.5 * s * s, a * s));
      }
      const cplx inner = prefix[p] + partial;
      const cplx g2 = std::exp(cplx(-0.5 * node[k] * node[k], -b * node[k]));
      total += weight[k] * g2 * inner;
    }
    return total;
  }
};

} // namespace

cplx quadrature_oracle(const NestedIntegralArgs& args) {
  args.validate();
  // Envelope truncation at |s| = 10: exp(-50) ~ 2e-22.
  static const OracleGrid coarse(10.0, 50, 12);
  static const OracleGrid fine(10.0, 71, 12);

  const double a = args.alpha * args.sigma;
  const double b = args.beta * args.sigma;
  const cplx j1 = coarse.evaluate(a, b);
  const cplx j2 = fine.evaluate(a, b);
  if (std::abs(j1 - j2) > 1e-11 * std::max(kPi, std::abs(j2)))
    throw std::runtime_error("quadrature_oracle: resolutions disagree, no convergence");
  return args.sigma * args.sigma * j2;
}

} // namespace ppwpi
