#ifndef PPWPI_SPECIAL_FUNCTIONS_HPP
#define PPWPI_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <stdexcept>

namespace ppwpi {

using cplx = std::complex<double>;

/// Raised by complex_erf when |erf(z)| would exceed the representable
/// range (erf(iy) grows like exp(y^2)).
class ErfOverflowError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// Arguments of the ordered double Gaussian time integral
///   I(alpha, beta) = \int dt2 \int_{-inf}^{t2} dt1
///       exp(-t1^2/2s^2 + i a t1 - t2^2/2s^2 - i b t2).
/// alpha, beta are angular-frequency detunings, sigma the pulse duration.
struct NestedIntegralArgs {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma = 1.0;

  // throws std::invalid_argument on sigma <= 0 or non-finite fields
  void validate() const;
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
///
/// Trapezoidal Poisson-summation evaluation with a residue correction
/// term; two interleaved node grids keep real arguments away from the
/// correction-term poles. Relative accuracy ~1e-14 for |z| <= ~15.
cplx faddeeva_w(cplx z);

/// erf(z) for complex z. Odd symmetry erf(-z) = -erf(z) holds exactly
/// (negative-real-part arguments are reduced by reflection before any
/// arithmetic). Throws ErfOverflowError when the result magnitude would
/// overflow, instead of returning infinity.
cplx complex_erf(cplx z);

/// Closed form of the ordered double Gaussian integral,
///   I = pi s^2 exp(-s^2(a^2+b^2)/2) (1 - erf(i s (a+b)/2)),
/// evaluated through the real-argument Faddeeva function so the result
/// stays finite for every real detuning pair.
cplx nested_gaussian_integral(const NestedIntegralArgs& args);

/// Direct numerical evaluation of the pre-closed-form definition on the
/// truncated ordered region |t| <= 10 sigma, by composite Gauss-Legendre
/// panels with a prefix decomposition of the inner integral. Absolute
/// accuracy <= 1e-10 pi sigma^2. Used as the independent test oracle for
/// nested_gaussian_integral; throws std::runtime_error if the two
/// internal resolutions disagree.
cplx quadrature_oracle(const NestedIntegralArgs& args);

} // namespace ppwpi

#endif
