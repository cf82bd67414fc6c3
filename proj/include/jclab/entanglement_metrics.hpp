#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "jclab/params.hpp"
#include "jclab/state_engine.hpp"

namespace jclab {

/// CHSH measurement directions; each must be a unit vector in R^3.
struct BellSettings {
  Eigen::Vector3d a, a_prime, b, b_prime;
};

/// T_ij = Tr(rho sigma_i (x) sigma_j), i, j in {x, y, z}.
using CorrelationMatrix = Eigen::Matrix3d;

/// Wootters concurrence: max{0, l1 - l2 - l3 - l4} with l_i the descending
/// square roots of the eigenvalues of rho (sy (x) sy) rho* (sy (x) sy).
/// Throws NonPhysicalState for inputs violating density-matrix tolerances.
double concurrence(const TwoQubitState& state);

/// Square roots of the Wootters eigenvalues, sorted descending.
std::array<double, 4> wootters_spectrum(const TwoQubitState& state);

/// h((1 + sqrt(1 - C^2))/2) with h the binary entropy; C in [0, 1].
double entanglement_of_formation(double concurrence);

/// max{0, sqrt(1-x^2)/x * f * sin(theta)}; 0 at t = 0.
double concurrence_closed_form(const SystemParams& params, double t);

double linear_entropy(const QubitDensity& density);  ///< 1 - Tr[rho^2]
double linear_entropy(const TwoQubitState& density);

CorrelationMatrix correlation_matrix(const TwoQubitState& state);

/// Tr(rho B) for B = a.s (x) (b+b').s + a'.s (x) (b-b').s.
double bell_expectation(const TwoQubitState& state, const BellSettings& settings);

/// Horodecki maximum 2 sqrt(mu1 + mu2) over the two largest eigenvalues of
/// T^T T.  May fall below 2 (no violation); never exceeds 2 sqrt(2).
double bell_max(const TwoQubitState& state);

/// 2 sqrt(1 + (f^2/x^2 - x^2) sin^2(theta)).
double bell_max_closed_form(const SystemParams& params, double t);

/// The root t* of f^2/x^2 = x^2 (where the CHSH violation dies), located by
/// bisection to 1e-10 relative.  Independent of theta and phi.  Requires
/// k > 0 and sin(theta) != 0; throws NoViolation when no sign change exists
/// in the (geometrically expanded) bracket.
double bell_death_time(const SystemParams& params);

/// Monte-Carlo + coordinate-descent lower bound on the CHSH maximum, used to
/// cross-check bell_max from below.  Deterministic for a fixed seed.
struct BellOptimum {
  double value = 0.0;
  BellSettings settings;
};
BellOptimum bell_optimize_settings(const TwoQubitState& state, int samples,
                                   std::uint64_t seed, int refine_sweeps = 40);

}  // namespace jclab
