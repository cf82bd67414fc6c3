#pragma once

#include "jclab/params.hpp"

namespace jclab {

/// The closed-form scalar triple that drives every other formula:
/// coherent amplitude alpha(t), decoherence factor f(t) and the
/// coherent-state overlap x(t) = <alpha|-alpha> = exp(-2|alpha|^2).
struct ScalarProfile {
  Complex alpha;  ///< purely imaginary with Im >= 0 for t >= 0
  double f = 1.0;       ///< in (0, 1], f <= x
  double x = 1.0;       ///< in (0, 1]
};

/// Dimensionless switch point: below k*t < kSmallKtSwitch the dissipative
/// expressions are replaced by their series limits (exact at k = 0).
inline constexpr double kSmallKtSwitch = 1e-6;

/// Evaluates alpha(t) = i (g/k)(1 - e^{-kt/2}),
/// f(t) = exp(-2 (g/k)^2 k t + 4 (g/k)^2 (1 - e^{-kt/2})) and
/// x(t) = exp(-2 |alpha|^2).  For k = 0 (or kt below the switch) the
/// stable series limits are used, never a division by k.
ScalarProfile scalar_profile(const SystemParams& params, double t);

/// Phase-space characteristic function chi_ij(beta, t) = Tr[rho_ij(t) D(beta)]
/// of the field operator block (i, j), with i, j in {1, 2} labelling the
/// rotated atomic basis {|+>, |->}.  chi_21(beta) = conj(chi_12(-beta)).
Complex characteristic_function(const SystemParams& params, double t,
                                Complex beta, int i, int j);

}  // namespace jclab
