#pragma once

#include "jclab/params.hpp"
#include "jclab/state_engine.hpp"

namespace jclab {

/// Bloch angles of an unknown pure input state
/// cos(vartheta/2)|+> + e^{i varphi} sin(vartheta/2)|->.
struct BlochAngles {
  double vartheta = 0.0;  ///< [0, pi]
  double varphi = 0.0;    ///< [0, 2*pi)
};

/// Best fidelity a classical channel can reach for one qubit.
inline constexpr double kClassicalFidelityOneQubit = 2.0 / 3.0;
/// Two-qubit analogue for the two-copy protocol.
inline constexpr double kClassicalFidelityTwoQubit = 2.0 / 5.0;

/// Overlaps of the channel with the four Bell states over
/// {|+>,|->} (x) {|v1>,|v2>}:
///   Psi0 = (|+ v2> + |- v1>)/sqrt2,  Psi1 = (|+ v1> + |- v2>)/sqrt2,
///   Psi2 = (|+ v1> - |- v2>)/sqrt2,  Psi3 = (|+ v2> - |- v1>)/sqrt2.
struct ChannelProbabilities {
  double p0 = 0, p1 = 0, p2 = 0, p3 = 0;
  /// Set when p0 is not the largest overlap; optimal-fidelity formulas are
  /// then fed max_p() instead of p0.
  bool p0_not_maximal = false;

  double max_p() const;
  double sum() const { return p0 + p1 + p2 + p3; }
};

ChannelProbabilities channel_probabilities(const TwoQubitState& channel);

/// Standard protocol: rho_out = sum_i p_i sigma^i rho_in sigma^i.
QubitDensity teleport_one_qubit(const TwoQubitState& channel, const BlochAngles& input);

/// <psi_in| rho_out |psi_in> for the pure input.
double fidelity(const BlochAngles& input, const QubitDensity& output);

/// Fidelity averaged over all pure inputs: (p0+p3) + (2/3)(p1-p3).
double average_fidelity_p0(const ChannelProbabilities& probs);
double average_fidelity_p0(const SystemParams& params, double t);

/// Optimal teleportation fidelity (f_max d + 1)/(d + 1) from the maximal
/// entangled fraction f_max on C^d (x) C^d.
double optimal_fidelity(double f_max, int d);

/// Two independent Bell measurements over two channel copies:
/// rho_out = sum_ij p_i p_j (sigma_i (x) sigma_j) rho_in (sigma_i (x) sigma_j).
/// The input is cos(vartheta/2)|+-> + e^{i varphi} sin(vartheta/2)|-+> on
/// the basis {|++>, |+->, |-+>, |-->}.
TwoQubitState teleport_two_qubit(const TwoQubitState& channel, const BlochAngles& input);

struct TeleportationReport {
  ChannelProbabilities probabilities;
  TwoQubitState output;
  double fidelity = 0.0;            ///< (p0+p3)^2 + 2(p1^2 - p0 p3) sin^2(vartheta)
  double average_fidelity = 0.0;    ///< fidelity averaged over the input family
  double optimal_fidelity = 0.0;    ///< (4 p0^2 + 1)/5, the printed closed form
  double optimal_fidelity_max_p = 0.0;  ///< (4 max_p^2 + 1)/5; differs only when p0 is not maximal
  double output_concurrence = 0.0;  ///< max{0, (p0-p3)^2 sin(vartheta) - 4(p0+p3) p1}
};

TeleportationReport two_qubit_report(const SystemParams& params, double t,
                                     const BlochAngles& input);

}  // namespace jclab
