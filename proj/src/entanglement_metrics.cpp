#include "jclab/entanglement_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "jclab/errors.hpp"

namespace jclab {
namespace {

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

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
  static const Eigen::Matrix4cd syy = kron2(pauli(2), pauli(2));
  return syy * rho.conjugate() * syy;
}

Eigen::Vector3d unit_or_throw(const Eigen::Vector3d& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(name) + " is not a unit vector");
  return v;
}

// Violation margin in tau = k t: f^2/x^2 > x^2 iff w(tau) > 0 with
// w(tau) = -2 tau + 4(1-u) + 4(1-u)^2, u = e^{-tau/2}.  The coupling and the
// atom angles factor out entirely.
double violation_margin(double tau) {
  const double omu = -std::expm1(-0.5 * tau);
  return -2.0 * tau + 4.0 * omu + 4.0 * omu * omu;
}

}  // namespace

std::array<double, 4> wootters_spectrum(const TwoQubitState& state) {
  require_physical(state);
  const Eigen::Matrix4cd herm = 0.5 * (state.matrix + state.matrix.adjoint());

  // The Hermitian-equivalent sqrt(rho) rhotilde sqrt(rho) route loses
  // O(sqrt(eps)) on the near-null eigenvalues, so solve rho rhotilde
  // directly; its spectrum is real and non-negative for physical states.
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(herm * spin_flip(herm), false);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) {
    double v = es.eigenvalues()[i].real();
    if (v < 0.0 && v > -1e-12) v = 0.0;  // round-off
    lam[i] = std::sqrt(std::max(v, 0.0));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return lam;
}

double concurrence(const TwoQubitState& state) {
  const auto lam = wootters_spectrum(state);
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_formation(double concurrence) {
  if (!std::isfinite(concurrence) || concurrence < -1e-12 || concurrence > 1.0 + 1e-12)
    throw std::invalid_argument("concurrence must lie in [0, 1]");
  const double c = std::clamp(concurrence, 0.0, 1.0);
  const double p = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  if (p <= 0.0 || p >= 1.0) return (p >= 1.0) ? 0.0 : 1.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double concurrence_closed_form(const SystemParams& params, double t) {
  const ScalarProfile p = scalar_profile(params, t);
  if (std::abs(p.alpha) <= kDegenerateAlpha) return 0.0;
  const double r = std::sqrt(1.0 - p.x * p.x);
  return std::max(0.0, r / p.x * p.f * std::sin(params.theta));
}

double linear_entropy(const QubitDensity& density) {
  return std::max(0.0, 1.0 - (density.matrix * density.matrix).trace().real());
}

double linear_entropy(const TwoQubitState& density) {
  return std::max(0.0, 1.0 - (density.matrix * density.matrix).trace().real());
}

CorrelationMatrix correlation_matrix(const TwoQubitState& state) {
  CorrelationMatrix T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      T(i, j) = (state.matrix * kron2(pauli(i + 1), pauli(j + 1))).trace().real();
  return T;
}

double bell_expectation(const TwoQubitState& state, const BellSettings& s) {
  require_physical(state);
  const Eigen::Vector3d a = unit_or_throw(s.a, "a");
  const Eigen::Vector3d ap = unit_or_throw(s.a_prime, "a'");
  const Eigen::Vector3d b = unit_or_throw(s.b, "b");
  const Eigen::Vector3d bp = unit_or_throw(s.b_prime, "b'");

  auto dot_sigma = [](const Eigen::Vector3d& n) {
    return (n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3)).eval();
  };
  const Eigen::Matrix4cd bell_op =
      kron2(dot_sigma(a), dot_sigma(b + bp)) +
      kron2(dot_sigma(ap), dot_sigma(b - bp));
  return (state.matrix * bell_op).trace().real();
}

double bell_max(const TwoQubitState& state) {
  require_physical(state);
  const CorrelationMatrix T = correlation_matrix(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(T.transpose() * T,
                                                    Eigen::EigenvaluesOnly);
  return 2.0 * std::sqrt(es.eigenvalues()[2] + es.eigenvalues()[1]);
}

double bell_max_closed_form(const SystemParams& params, double t) {
  const ScalarProfile p = scalar_profile(params, t);
  const double s = std::sin(params.theta);
  const double ratio = p.f / p.x;
  return 2.0 * std::sqrt(1.0 + (ratio * ratio - p.x * p.x) * s * s);
}

double bell_death_time(const SystemParams& params) {
  params.validate();
  if (params.k <= 0.0)
    throw std::invalid_argument("bell_death_time requires k > 0");
  if (std::sin(params.theta) == 0.0)
    throw std::invalid_argument("bell_death_time requires sin(theta) != 0");

  double lo = 1e-6, hi = 50.0;
  if (violation_margin(lo) <= 0.0) throw NoViolation("no violation at small kt");
  while (violation_margin(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e9) throw NoViolation("no sign change up to kt = 1e9");
  }
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (violation_margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) / params.k;
}

BellOptimum bell_optimize_settings(const TwoQubitState& state, int samples,
                                   std::uint64_t seed, int refine_sweeps) {
  const CorrelationMatrix T = correlation_matrix(state);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_unit = [&] {
    Eigen::Vector3d v;
    do {
      v = {gauss(rng), gauss(rng), gauss(rng)};
    } while (v.norm() < 1e-12);
    return (v / v.norm()).eval();
  };
  auto value = [&](const BellSettings& s) {
    return s.a.dot(T * (s.b + s.b_prime)) + s.a_prime.dot(T * (s.b - s.b_prime));
  };

  BellOptimum best;
  best.settings = {random_unit(), random_unit(), random_unit(), random_unit()};
  best.value = value(best.settings);
  for (int i = 0; i < samples; ++i) {
    BellSettings s{random_unit(), random_unit(), random_unit(), random_unit()};
    const double v = std::abs(value(s));
    if (v > best.value) {
      // absorb the sign into a -> -a, a' -> -a'
      if (value(s) < 0.0) { s.a = -s.a; s.a_prime = -s.a_prime; }
      best = {v, s};
    }
  }
  auto normalized = [](const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
    return (v.norm() > 1e-14) ? (v / v.norm()).eval() : fallback;
  };
  for (int sweep = 0; sweep < refine_sweeps; ++sweep) {
    auto& s = best.settings;
    s.a = normalized(T * (s.b + s.b_prime), s.a);
    s.a_prime = normalized(T * (s.b - s.b_prime), s.a_prime);
    s.b = normalized(T.transpose() * (s.a + s.a_prime), s.b);
    s.b_prime = normalized(T.transpose() * (s.a - s.a_prime), s.b_prime);
    best.value = value(s);
  }
  return best;
}

}  // namespace jclab
