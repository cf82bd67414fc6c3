#pragma once

#include <Eigen/Dense>

#include "jclab/params.hpp"
#include "jclab/scalar_dynamics.hpp"

namespace jclab {

/// 4x4 density matrix in the ordered product basis
/// {|+>|v1>, |+>|v2>, |->|v1>, |->|v2>}.  All modules share this ordering.
struct TwoQubitState {
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
};

/// 2x2 reduced density matrix (atom in {|+>,|->}, field in {|v1>,|v2>}).
struct QubitDensity {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Zero();
};

/// Orthonormal field-qubit basis built from the two coherent states by
/// Gram-Schmidt: |v1> = |alpha>, |v2> = (|-alpha> - x|alpha>)/sqrt(1-x^2).
/// Coefficients are stored on the non-orthogonal pair {|alpha>, |-alpha>}.
struct FieldQubitBasis {
  Eigen::Vector2cd v1{1.0, 0.0};
  Eigen::Vector2cd v2{0.0, 0.0};
  double x = 0.0;  ///< overlap <alpha|-alpha> used in the construction
};

/// Below this |alpha| the Gram-Schmidt denominator sqrt(1-x^2) has lost all
/// precision and the field is effectively one-dimensional.
inline constexpr double kDegenerateAlpha = 1e-8;

/// Throws DegenerateBasis when |alpha| <= kDegenerateAlpha.
FieldQubitBasis field_qubit_basis(Complex alpha);

/// Exact atom-field state at time t.  At t = 0 (degenerate basis) returns
/// the limit product state |psi_a(0)><psi_a(0)| (x) |v1><v1|.
TwoQubitState joint_state(const SystemParams& params, double t);
TwoQubitState joint_state(const SystemParams& params, const ScalarProfile& profile);

struct ReducedStates {
  QubitDensity atom;
  QubitDensity field;
};

/// Partial traces of the joint state.  The field part depends only on x(t).
ReducedStates reduced_states(const TwoQubitState& state);
ReducedStates reduced_states(const SystemParams& params, double t);

/// Separable long-time state, expressed in the basis built from
/// alpha_inf = i g / k.  Requires k > 0.
TwoQubitState asymptotic_state(const SystemParams& params);

/// Coherent amplitudes reached from the vacuum by the k = 0 unitary
/// U(xi) = |+><+| D(-xi) + |-><-| D(xi) with xi = i g t / 2.
struct BranchAmplitudes {
  Complex plus;   ///< field amplitude of the |+> branch, -xi(t)
  Complex minus;  ///< field amplitude of the |-> branch, +xi(t)
};
BranchAmplitudes decoherence_free_evolve(double g, double t);

/// Truncated photon-number expansion of |alpha>,
/// coeff[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!), n = 0..n_max.
struct CoherentVector {
  Eigen::VectorXcd coeff;
  double tail = 0.0;  ///< 1 - sum |coeff[n]|^2
};

/// Throws TruncationTooSmall when the tail mass exceeds max_tail.
CoherentVector coherent_fock(Complex alpha, int n_max, double max_tail = 1e-10);

/// Hermiticity / unit-trace / positivity check shared by the metric and
/// teleportation modules; throws NonPhysicalState beyond `tol`.
void require_physical(const TwoQubitState& state, double tol = 1e-6);

}  // namespace jclab
