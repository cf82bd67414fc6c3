#include "jclab/teleportation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "jclab/errors.hpp"

namespace jclab {
namespace {

void validate_angles(const BlochAngles& in) {
  if (!std::isfinite(in.vartheta) || in.vartheta < 0.0 || in.vartheta > M_PI)
    throw std::invalid_argument("vartheta must lie in [0, pi]");
  if (!std::isfinite(in.varphi) || in.varphi < 0.0 || in.varphi >= 2.0 * M_PI)
    throw std::invalid_argument("varphi must lie in [0, 2*pi)");
}

Eigen::Matrix2cd pauli(int i) {
  Eigen::Matrix2cd s;
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s.setIdentity(); break;
  }
  return s;
}

// Bell states over {|+>,|->} (x) {|v1>,|v2>} in the shared basis ordering
// {+v1, +v2, -v1, -v2}.
const std::array<Eigen::Vector4cd, 4>& bell_states() {
  static const std::array<Eigen::Vector4cd, 4> states = [] {
    const double s = 1.0 / std::sqrt(2.0);
    std::array<Eigen::Vector4cd, 4> b;
    b[0] << 0, s, s, 0;
    b[1] << s, 0, 0, s;
    b[2] << s, 0, 0, -s;
    b[3] << 0, s, -s, 0;
    return b;
  }();
  return states;
}

const std::array<Eigen::Matrix4cd, 16>& pauli_pairs() {
  static const std::array<Eigen::Matrix4cd, 16> ops = [] {
    std::array<Eigen::Matrix4cd, 16> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Eigen::Matrix4cd m;
        const Eigen::Matrix2cd a = pauli(i), b = pauli(j);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            m.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
        out[4 * i + j] = m;
      }
    return out;
  }();
  return ops;
}

}  // namespace

double ChannelProbabilities::max_p() const {
  return std::max({p0, p1, p2, p3});
}

ChannelProbabilities channel_probabilities(const TwoQubitState& channel) {
  require_physical(channel);
  const auto& bell = bell_states();
  ChannelProbabilities p;
  p.p0 = (bell[0].adjoint() * channel.matrix * bell[0]).value().real();
  p.p1 = (bell[1].adjoint() * channel.matrix * bell[1]).value().real();
  p.p2 = (bell[2].adjoint() * channel.matrix * bell[2]).value().real();
  p.p3 = (bell[3].adjoint() * channel.matrix * bell[3]).value().real();
  p.p0_not_maximal = (std::max({p.p1, p.p2, p.p3}) - p.p0) > 1e-14;
  return p;
}

QubitDensity teleport_one_qubit(const TwoQubitState& channel, const BlochAngles& input) {
  validate_angles(input);
  const ChannelProbabilities p = channel_probabilities(channel);

  Eigen::Vector2cd psi(std::cos(0.5 * input.vartheta),
                       std::exp(Complex(0.0, input.varphi)) * std::sin(0.5 * input.vartheta));
  const Eigen::Matrix2cd rho_in = psi * psi.adjoint();
  const double probs[4] = {p.p0, p.p1, p.p2, p.p3};

  QubitDensity out;
  for (int i = 0; i < 4; ++i)
    out.matrix += probs[i] * pauli(i) * rho_in * pauli(i);
  return out;
}

double fidelity(const BlochAngles& input, const QubitDensity& output) {
  validate_angles(input);
  Eigen::Vector2cd psi(std::cos(0.5 * input.vartheta),
                       std::exp(Complex(0.0, input.varphi)) * std::sin(0.5 * input.vartheta));
  return (psi.adjoint() * output.matrix * psi).value().real();
}

double average_fidelity_p0(const ChannelProbabilities& probs) {
  return (probs.p0 + probs.p3) + (2.0 / 3.0) * (probs.p1 - probs.p3);
}

double average_fidelity_p0(const SystemParams& params, double t) {
  const ScalarProfile p = scalar_profile(params, t);
  const double c2 = std::cos(0.5 * params.theta) * std::cos(0.5 * params.theta);
  const double q = p.f * std::sqrt(1.0 - p.x * p.x) / p.x *
                   std::sin(params.theta) * std::cos(params.phi);
  return 2.0 / 3.0 + (q - p.x * p.x * c2) / 3.0;
}

double optimal_fidelity(double f_max, int d) {
  if (!std::isfinite(f_max) || f_max < -1e-12 || f_max > 1.0 + 1e-12)
    throw std::invalid_argument("singlet fraction must lie in [0, 1]");
  if (d < 2) throw std::invalid_argument("local dimension must be >= 2");
  return (std::clamp(f_max, 0.0, 1.0) * d + 1.0) / (d + 1.0);
}

TwoQubitState teleport_two_qubit(const TwoQubitState& channel, const BlochAngles& input) {
  validate_angles(input);
  const ChannelProbabilities p = channel_probabilities(channel);
  const double probs[4] = {p.p0, p.p1, p.p2, p.p3};

  // Input cos(vartheta/2)|+-> + e^{i varphi} sin(vartheta/2)|-+>.
  const double a = std::cos(0.5 * input.vartheta) * std::cos(0.5 * input.vartheta);
  const double b = std::sin(0.5 * input.vartheta) * std::sin(0.5 * input.vartheta);
  const Complex c = 0.5 * std::sin(input.vartheta) *
                    std::exp(Complex(0.0, -input.varphi));
  Eigen::Matrix4cd rho_in = Eigen::Matrix4cd::Zero();
  rho_in(1, 1) = a;
  rho_in(2, 2) = b;
  rho_in(1, 2) = c;
  rho_in(2, 1) = std::conj(c);

  TwoQubitState out;
  const auto& ops = pauli_pairs();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Eigen::Matrix4cd& u = ops[4 * i + j];
      out.matrix += (probs[i] * probs[j]) * (u * rho_in * u);
    }
  return out;
}

TeleportationReport two_qubit_report(const SystemParams& params, double t,
                                     const BlochAngles& input) {
  validate_angles(input);
  const TwoQubitState channel = joint_state(params, t);

  TeleportationReport report;
  report.probabilities = channel_probabilities(channel);
  report.output = teleport_two_qubit(channel, input);

  const auto& p = report.probabilities;
  const double s = std::sin(input.vartheta);
  const double sum03 = p.p0 + p.p3;
  report.fidelity = sum03 * sum03 + 2.0 * (p.p1 * p.p1 - p.p0 * p.p3) * s * s;
  // <sin^2> = 2/3 over the input family
  report.average_fidelity = sum03 * sum03 + (4.0 / 3.0) * (p.p1 * p.p1 - p.p0 * p.p3);
  report.optimal_fidelity = optimal_fidelity(p.p0 * p.p0, 4);
  report.optimal_fidelity_max_p = optimal_fidelity(p.max_p() * p.max_p(), 4);
  report.output_concurrence =
      std::max(0.0, (p.p0 - p.p3) * (p.p0 - p.p3) * s - 4.0 * sum03 * p.p1);
  return report;
}

}  // namespace jclab
