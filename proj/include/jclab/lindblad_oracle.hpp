#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "jclab/params.hpp"
#include "jclab/state_engine.hpp"

namespace jclab {

/// Density matrix over {|+>,|->} (x) {|0>..|N>}, row/column index
/// s*(N+1) + n with atom index s in {0 -> +, 1 -> -} and Fock level n.
struct FockJointState {
  Eigen::MatrixXcd matrix;
  int fock_dim = 0;  ///< N, the highest retained Fock level
  double t = 0.0;
};

struct LindbladOptions {
  int fock_dim = 0;    ///< 0: use default_fock_dim
  double dt = 0.0;     ///< 0: use default_time_step
  double tol = 0.0;    ///< 0: fixed-step RK4; >0: step-doubling local error bound
  double max_top_population = 1e-10;  ///< truncation-health bound on level N
};

/// Truncation policy: N = ceil(10 + 12 (g/k)^2) for k > 0,
/// N = ceil(10 + 12 (g t_max / 2)^2) for k = 0.
int default_fock_dim(const SystemParams& params, double t_max);

/// Fixed-step default dt = min(0.001/g, 0.001/k for k > 0).
double default_time_step(const SystemParams& params);

/// Integrates d rho/dt = -i[H, rho] + (k/2)(2 a rho a+ - a+a rho - rho a+a)
/// with H = (g/2)(|+><+| - |-><-|)(a + a+) from the product initial state
/// (cos(theta/2)|+> + e^{i phi} sin(theta/2)|->) (x) |0>.
/// Throws TruncationTooSmall / StepFailure.
FockJointState evolve_lindblad(const SystemParams& params, double t_final,
                               const LindbladOptions& opts = {});

/// Same trajectory, sampled at the given (ascending, >= 0) times.
std::vector<FockJointState> evolve_lindblad_at(const SystemParams& params,
                                               std::span<const double> times,
                                               const LindbladOptions& opts = {});

struct ProjectedState {
  TwoQubitState state;
  double leakage = 0.0;  ///< probability weight outside span{|alpha>,|-alpha>}
};

/// Compresses the Fock-space state onto {|+>,|->} (x) {|v1>,|v2>} built from
/// alpha.  Throws ExcessLeakage when the weight outside the span exceeds
/// max_leakage, DegenerateBasis when |alpha| <= kDegenerateAlpha.
ProjectedState project_to_qubit(const FockJointState& state, Complex alpha,
                                double max_leakage = 1e-6);

/// Truncated displacement operator exp(beta a+ - beta* a) on |0>..|n_max>,
/// built by exponentiating the (Hermitian-conjugated) generator exactly.
Eigen::MatrixXcd displacement_operator(Complex beta, int n_max);

}  // namespace jclab
