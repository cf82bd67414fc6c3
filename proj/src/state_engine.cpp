#include "jclab/state_engine.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jclab/errors.hpp"

namespace jclab {

FieldQubitBasis field_qubit_basis(Complex alpha) {
  const double mod = std::abs(alpha);
  if (!std::isfinite(mod)) throw std::invalid_argument("alpha must be finite");
  if (mod <= kDegenerateAlpha)
    throw DegenerateBasis("|alpha| <= 1e-8: |alpha> and |-alpha> coincide");

  FieldQubitBasis basis;
  basis.x = std::exp(-2.0 * mod * mod);
  const double denom = std::sqrt(1.0 - basis.x * basis.x);
  basis.v1 = Eigen::Vector2cd(1.0, 0.0);
  basis.v2 = Eigen::Vector2cd(-basis.x / denom, 1.0 / denom);
  return basis;
}

TwoQubitState joint_state(const SystemParams& params, const ScalarProfile& p) {
  const double c2 = std::cos(0.5 * params.theta) * std::cos(0.5 * params.theta);
  const double s2 = std::sin(0.5 * params.theta) * std::sin(0.5 * params.theta);
  const Complex cross =
      0.5 * std::sin(params.theta) * std::exp(Complex(0.0, -params.phi));

  TwoQubitState state;
  auto& m = state.matrix;
  if (std::abs(p.alpha) <= kDegenerateAlpha) {
    // Limit state: the field sector is one-dimensional and sits on |v1>.
    m(0, 0) = c2;
    m(0, 2) = cross;
    m(2, 0) = std::conj(cross);
    m(2, 2) = s2;
    return state;
  }

  const double x = p.x;
  const double r = std::sqrt(1.0 - x * x);
  m(0, 0) = x * x * c2;
  m(0, 1) = x * r * c2;
  m(1, 0) = x * r * c2;
  m(1, 1) = (1.0 - x * x) * c2;
  m(2, 2) = s2;
  m(0, 2) = p.f * cross;
  m(1, 2) = p.f * r / x * cross;
  m(2, 0) = std::conj(m(0, 2));
  m(2, 1) = std::conj(m(1, 2));
  return state;
}

TwoQubitState joint_state(const SystemParams& params, double t) {
  return joint_state(params, scalar_profile(params, t));
}

ReducedStates reduced_states(const TwoQubitState& state) {
  const auto& m = state.matrix;
  ReducedStates out;
  out.atom.matrix << m(0, 0) + m(1, 1), m(0, 2) + m(1, 3),
                     m(2, 0) + m(3, 1), m(2, 2) + m(3, 3);
  out.field.matrix << m(0, 0) + m(2, 2), m(0, 1) + m(2, 3),
                      m(1, 0) + m(3, 2), m(1, 1) + m(3, 3);
  return out;
}

ReducedStates reduced_states(const SystemParams& params, double t) {
  return reduced_states(joint_state(params, t));
}

TwoQubitState asymptotic_state(const SystemParams& params) {
  params.validate();
  if (params.k <= 0.0)
    throw std::invalid_argument("asymptotic state requires k > 0");

  // lim alpha(t) = i g / k; coherences die with f -> 0.
  const double mod = params.g / params.k;
  const double x = std::exp(-2.0 * mod * mod);
  const double r = std::sqrt(1.0 - x * x);
  const double c2 = std::cos(0.5 * params.theta) * std::cos(0.5 * params.theta);
  const double s2 = std::sin(0.5 * params.theta) * std::sin(0.5 * params.theta);

  // |-alpha_inf> = x |v1> + r |v2> on the basis built from alpha_inf.
  TwoQubitState state;
  auto& m = state.matrix;
  m(0, 0) = x * x * c2;
  m(0, 1) = x * r * c2;
  m(1, 0) = x * r * c2;
  m(1, 1) = r * r * c2;
  m(2, 2) = s2;
  return state;
}

BranchAmplitudes decoherence_free_evolve(double g, double t) {
  if (!std::isfinite(g) || g <= 0.0)
    throw std::invalid_argument("coupling g must be finite and > 0");
  if (!std::isfinite(t) || t < 0.0)
    throw std::invalid_argument("time must be finite and >= 0");
  const Complex xi(0.0, 0.5 * g * t);
  return {-xi, xi};
}

CoherentVector coherent_fock(Complex alpha, int n_max, double max_tail) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  CoherentVector out;
  out.coeff.resize(n_max + 1);
  out.coeff[0] = std::exp(-0.5 * std::norm(alpha));
  double norm2 = std::norm(out.coeff[0]);
  for (int n = 1; n <= n_max; ++n) {
    out.coeff[n] = out.coeff[n - 1] * alpha / std::sqrt(double(n));
    norm2 += std::norm(out.coeff[n]);
  }
  out.tail = std::max(0.0, 1.0 - norm2);
  if (out.tail > max_tail) {
    std::ostringstream msg;
    msg << "coherent-state tail mass " << out.tail << " exceeds " << max_tail
        << " at n_max=" << n_max << ", |alpha|=" << std::abs(alpha);
    throw TruncationTooSmall(msg.str());
  }
  return out;
}

void require_physical(const TwoQubitState& state, double tol) {
  const auto& m = state.matrix;
  if (!m.allFinite()) throw NonPhysicalState("matrix has non-finite entries");

  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    std::ostringstream msg;
    msg << "not Hermitian: max |rho - rho^dag| = " << herm;
    throw NonPhysicalState(msg.str());
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0));
  if (trace_err > tol) {
    std::ostringstream msg;
    msg << "trace deviates from 1 by " << trace_err;
    throw NonPhysicalState(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
      0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -tol) {
    std::ostringstream msg;
    msg << "negative eigenvalue " << min_ev;
    throw NonPhysicalState(msg.str());
  }
}

}  // namespace jclab
