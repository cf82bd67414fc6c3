#include "jclab/scalar_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace jclab {

void SystemParams::validate() const {
  if (!std::isfinite(g) || g <= 0.0)
    throw std::invalid_argument("coupling g must be finite and > 0");
  if (!std::isfinite(k) || k < 0.0)
    throw std::invalid_argument("decay rate k must be finite and >= 0");
  if (!std::isfinite(theta) || theta < 0.0 || theta > M_PI)
    throw std::invalid_argument("theta must lie in [0, pi]");
  if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * M_PI)
    throw std::invalid_argument("phi must lie in [0, 2*pi)");
}

ScalarProfile scalar_profile(const SystemParams& params, double t) {
  params.validate();
  if (!std::isfinite(t) || t < 0.0)
    throw std::invalid_argument("time must be finite and >= 0");

  const double g = params.g;
  const double k = params.k;
  const double kt = k * t;

  ScalarProfile out;
  if (k == 0.0 || kt < kSmallKtSwitch) {
    // Series limits in powers of kt; the correction terms vanish at k = 0,
    // leaving alpha = i g t / 2 and f = x = exp(-g^2 t^2 / 2).
    const double a = 0.5 * g * t * (1.0 - kt / 4.0 + kt * kt / 24.0);
    const double e = -0.5 * g * g * t * t * (1.0 - kt / 6.0 + kt * kt / 48.0);
    out.alpha = Complex(0.0, a);
    out.f = std::exp(e);
    out.x = std::exp(-2.0 * a * a);
  } else {
    const double ratio = g / k;
    const double one_minus_u = -std::expm1(-0.5 * kt);  // 1 - e^{-kt/2}
    const double a = ratio * one_minus_u;
    out.alpha = Complex(0.0, a);
    out.f = std::exp(ratio * ratio * (-2.0 * kt + 4.0 * one_minus_u));
    out.x = std::exp(-2.0 * a * a);
  }
  return out;
}

Complex characteristic_function(const SystemParams& params, double t,
                                Complex beta, int i, int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2)
    throw std::invalid_argument("block index must be (i,j) in {1,2}x{1,2}");
  const ScalarProfile p = scalar_profile(params, t);

  const double half = 0.5 * std::norm(beta);
  const Complex ac = std::conj(p.alpha);
  const double c2 = std::cos(0.5 * params.theta) * std::cos(0.5 * params.theta);
  const double s2 = std::sin(0.5 * params.theta) * std::sin(0.5 * params.theta);

  if (i == 1 && j == 1)
    return c2 * std::exp(-half - ac * beta + p.alpha * std::conj(beta));
  if (i == 2 && j == 2)
    return s2 * std::exp(-half + ac * beta - p.alpha * std::conj(beta));

  const Complex coeff =
      0.5 * std::sin(params.theta) * p.f * std::exp(Complex(0.0, -params.phi));
  const Complex chi12 = coeff * std::exp(-half + ac * beta + p.alpha * std::conj(beta));
  if (i == 1) return chi12;
  // chi_21(beta) = conj(chi_12(-beta)); the exponent's beta-dependent part is
  // real, so only the sign of the displacement flips.
  return std::conj(coeff) * std::exp(-half - ac * beta - p.alpha * std::conj(beta));
}

}  // namespace jclab
