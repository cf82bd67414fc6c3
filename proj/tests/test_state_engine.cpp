#include <cmath>
#include <complex>

#include "doctest.h"
#include "jclab/entanglement_metrics.hpp"
#include "jclab/errors.hpp"
#include "jclab/state_engine.hpp"
#include "test_support.hpp"

using namespace jclab;
namespace fz = testsup::frozen;

namespace {

const SystemParams kUnit{1.0, 1.0, M_PI / 2, 0.0};

void check_density_invariants(const TwoQubitState& state) {
  const auto& m = state.matrix;
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(m.trace() - Complex(1.0)) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

}  // namespace

TEST_CASE("field qubit basis is orthonormal under the coherent metric") {
  for (const Complex alpha : {Complex(0.0, fz::alpha1), Complex(0.3, -0.2),
                              Complex(0.0, 1.7)}) {
    const FieldQubitBasis basis = field_qubit_basis(alpha);
    CHECK(std::abs(basis.x - std::exp(-2.0 * std::norm(alpha))) < 1e-15);
    // Gram matrix of {|alpha>, |-alpha>}
    Eigen::Matrix2cd gram;
    gram << 1.0, basis.x, basis.x, 1.0;
    const Complex n1 = (basis.v1.adjoint() * gram * basis.v1).value();
    const Complex n2 = (basis.v2.adjoint() * gram * basis.v2).value();
    const Complex cross = (basis.v1.adjoint() * gram * basis.v2).value();
    CHECK(std::abs(n1 - 1.0) < 1e-12);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
    CHECK(std::abs(cross) < 1e-12);
  }
}

TEST_CASE("degenerate basis is rejected") {
  CHECK_THROWS_AS(field_qubit_basis(Complex(0.0, 0.0)), DegenerateBasis);
  CHECK_THROWS_AS(field_qubit_basis(Complex(0.0, 0.5e-8)), DegenerateBasis);
}

TEST_CASE("well separated coherent states give v2 ~ |-alpha>") {
  const FieldQubitBasis basis = field_qubit_basis(Complex(0.0, 2.0));
  CHECK(std::abs(basis.x - fz::x_alpha2) < 1e-18);
  CHECK(std::abs(basis.v2(1).real() - 1.0) < 1e-6);
  CHECK(std::abs(basis.v2(0)) < 1e-3);
}

TEST_CASE("joint state matches the closed form at kt = 1") {
  const TwoQubitState state = joint_state(kUnit, 1.0);
  check_density_invariants(state);
  CHECK(std::abs(state.matrix(0, 2) - Complex(0.5 * fz::f1, 0.0)) < 1e-15);
  CHECK(std::abs(state.matrix(1, 2) - Complex(fz::out_offdiag1, 0.0)) < 1e-15);
  CHECK(std::abs(state.matrix(0, 0) - fz::x1 * fz::x1 * 0.5) < 1e-15);
}

TEST_CASE("joint state invariants over a parameter grid") {
  for (double g : {0.5, 1.0, 2.0})
    for (double theta : {0.0, M_PI / 4, M_PI / 2, 3 * M_PI / 4, M_PI})
      for (double phi : {0.0, M_PI / 3})
        for (double kt : {0.0, 0.25, 1.0, 4.0}) {
          const SystemParams params{g, 1.0, theta, phi};
          const TwoQubitState state = joint_state(params, kt);
          check_density_invariants(state);
          // fourth row and column vanish identically
          for (int i = 0; i < 4; ++i) {
            CHECK(state.matrix(3, i) == Complex(0.0));
            CHECK(state.matrix(i, 3) == Complex(0.0));
          }
          // purity identity Tr rho^2 = 1 - (1 - f^2/x^2) sin^2(theta) / 2
          const ScalarProfile p = scalar_profile(params, kt);
          const double ratio = p.f / p.x;
          const double s = std::sin(theta);
          const double purity = (state.matrix * state.matrix).trace().real();
          CHECK(std::abs(purity - (1.0 - 0.5 * (1.0 - ratio * ratio) * s * s)) < 1e-10);
        }
}

TEST_CASE("theta = 0 stays a pure product for all times") {
  const SystemParams params{1.0, 1.0, 0.0, 0.0};
  for (double t : {0.1, 1.0, 5.0}) {
    const TwoQubitState state = joint_state(params, t);
    CHECK(linear_entropy(state) < 1e-14);
    const ReducedStates red = reduced_states(state);
    CHECK(std::abs(red.atom.matrix(0, 0) - 1.0) < 1e-14);  // atom pinned to |+>
    CHECK(std::abs(red.atom.matrix(1, 1)) < 1e-14);
    // field part is |-alpha><-alpha| expanded on {v1, v2}
    const ScalarProfile p = scalar_profile(params, t);
    const double r = std::sqrt(1.0 - p.x * p.x);
    CHECK(std::abs(red.field.matrix(0, 0) - p.x * p.x) < 1e-14);
    CHECK(std::abs(red.field.matrix(0, 1) - p.x * r) < 1e-14);
  }
}

TEST_CASE("t = 0 limit is the pure product on the |v1> sector") {
  const SystemParams params{1.0, 1.0, 1.1, 0.8};
  const TwoQubitState state = joint_state(params, 0.0);
  check_density_invariants(state);
  const double c2 = std::cos(0.55) * std::cos(0.55);
  CHECK(std::abs(state.matrix(0, 0) - c2) < 1e-15);
  CHECK(std::abs(state.matrix(2, 2) - (1.0 - c2)) < 1e-15);
  CHECK(std::abs(state.matrix(0, 2) -
                 0.5 * std::sin(1.1) * std::exp(Complex(0.0, -0.8))) < 1e-15);
  CHECK(state.matrix(1, 1) == Complex(0.0));
  CHECK(linear_entropy(state) < 1e-14);
}

TEST_CASE("reduced states match the closed forms") {
  for (double theta : {M_PI / 4, M_PI / 2})
    for (double phi : {0.0, 1.0})
      for (double kt : {0.5, 1.0, 3.0}) {
        const SystemParams params{1.0, 1.0, theta, phi};
        const ReducedStates red = reduced_states(params, kt);
        const ScalarProfile p = scalar_profile(params, kt);
        const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
        const double s2 = 1.0 - c2;
        const Complex off = 0.5 * std::exp(Complex(0.0, -phi)) * std::sin(theta) * p.f;
        CHECK(std::abs(red.atom.matrix(0, 0) - c2) < 1e-12);
        CHECK(std::abs(red.atom.matrix(0, 1) - off) < 1e-12);
        CHECK(std::abs(red.atom.matrix(1, 1) - s2) < 1e-12);
        const double r = std::sqrt(1.0 - p.x * p.x);
        CHECK(std::abs(red.field.matrix(0, 0) - (p.x * p.x * c2 + s2)) < 1e-12);
        CHECK(std::abs(red.field.matrix(0, 1) - p.x * r * c2) < 1e-12);
        CHECK(std::abs(red.field.matrix(1, 1) - (1.0 - p.x * p.x) * c2) < 1e-12);
      }
}

TEST_CASE("atom coherence at kt = 1 is f/2") {
  const ReducedStates red = reduced_states(kUnit, 1.0);
  CHECK(std::abs(red.atom.matrix(0, 1).real() - 0.5 * fz::f1) < 1e-15);
}

TEST_CASE("field reduced state does not depend on phi") {
  for (double kt : {0.5, 2.0}) {
    const ReducedStates a = reduced_states({1.0, 1.0, 1.2, 0.0}, kt);
    const ReducedStates b = reduced_states({1.0, 1.0, 1.2, 2.1}, kt);
    CHECK(testsup::max_dev(a.field.matrix, b.field.matrix) < 1e-15);
  }
}

TEST_CASE("asymptotic state is separable and matches the long-time limit") {
  const TwoQubitState inf_state = asymptotic_state(kUnit);
  check_density_invariants(inf_state);
  CHECK(concurrence(inf_state) < 1e-12);
  CHECK(std::abs(linear_entropy(reduced_states(inf_state).field) - fz::s_field_inf) < 1e-12);

  const TwoQubitState late = joint_state(kUnit, 40.0);
  CHECK(testsup::max_dev(late.matrix, inf_state.matrix) < 1e-8);

  CHECK_THROWS_AS(asymptotic_state({1.0, 0.0, M_PI / 2, 0.0}), std::invalid_argument);
}

TEST_CASE("decoherence-free branch amplitudes") {
  const BranchAmplitudes id = decoherence_free_evolve(1.0, 0.0);
  CHECK(id.plus == Complex(0.0, 0.0));
  CHECK(id.minus == Complex(0.0, 0.0));

  const BranchAmplitudes u = decoherence_free_evolve(1.0, 2.0);
  CHECK(std::abs(u.plus - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(u.minus - Complex(0.0, 1.0)) < 1e-15);

  // xi(t) coincides with alpha(t) of the k = 0 profile
  for (double t : {0.3, 1.7, 4.0}) {
    const ScalarProfile p = scalar_profile({0.7, 0.0, M_PI / 2, 0.0}, t);
    CHECK(std::abs(decoherence_free_evolve(0.7, t).minus - p.alpha) < 1e-15);
  }
}

TEST_CASE("coherent state expansion") {
  const CoherentVector vac = coherent_fock(Complex(0.0, 0.0), 5);
  CHECK(vac.coeff(0) == Complex(1.0));
  CHECK(vac.coeff.tail(5).cwiseAbs().maxCoeff() == 0.0);
  CHECK(vac.tail == 0.0);

  const CoherentVector c = coherent_fock(Complex(0.0, fz::alpha1), 20);
  CHECK(std::abs(c.coeff(0).real() - fz::coh_n0_1) < 1e-15);
  CHECK(std::abs(c.coeff.squaredNorm() - (1.0 - c.tail)) < 1e-15);
  CHECK(c.tail < 1e-10);

  for (double mod : {0.2, 0.6, 1.0}) {
    const CoherentVector v = coherent_fock(Complex(mod, 0.0), 20);
    CHECK(v.tail < 1e-10);
  }
  CHECK_THROWS_AS(coherent_fock(Complex(0.0, 2.0), 3), TruncationTooSmall);
}

TEST_CASE("Fock embedding reproduces the field operator blocks") {
  // Lift the 4x4 state back to the truncated Fock space and compare with
  // the coherent-projector form of the field blocks.
  const SystemParams params{1.0, 1.0, 1.1, 0.8};
  const double t = 1.0;
  const ScalarProfile p = scalar_profile(params, t);
  const int n_max = 25;

  const FieldQubitBasis basis = field_qubit_basis(p.alpha);
  const Eigen::VectorXcd cp = coherent_fock(p.alpha, n_max).coeff;
  const Eigen::VectorXcd cm = coherent_fock(-p.alpha, n_max).coeff;
  Eigen::MatrixXcd v(n_max + 1, 2);
  v.col(0) = basis.v1(0) * cp + basis.v1(1) * cm;
  v.col(1) = basis.v2(0) * cp + basis.v2(1) * cm;

  const TwoQubitState state = joint_state(params, t);
  auto lifted_block = [&](int a, int b) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        block += state.matrix(2 * a + i, 2 * b + j) * v.col(i) * v.col(j).adjoint();
    return block;
  };

  const double c2 = std::cos(0.55) * std::cos(0.55);
  const Complex coeff12 =
      0.5 * std::exp(Complex(0.0, -0.8)) * std::sin(1.1) * p.f / p.x;
  CHECK(testsup::max_dev(lifted_block(0, 0), c2 * cm * cm.adjoint()) < 1e-8);
  CHECK(testsup::max_dev(lifted_block(0, 1), coeff12 * cm * cp.adjoint()) < 1e-8);
  CHECK(testsup::max_dev(lifted_block(1, 1), (1.0 - c2) * cp * cp.adjoint()) < 1e-8);
}

TEST_CASE("require_physical flags broken matrices") {
  TwoQubitState bad;
  bad.matrix.setZero();
  bad.matrix(0, 0) = 2.0;  // trace 2
  CHECK_THROWS_AS(require_physical(bad), NonPhysicalState);

  bad.matrix.setZero();
  bad.matrix(0, 0) = 1.0;
  bad.matrix(0, 1) = 0.5;  // not Hermitian
  CHECK_THROWS_AS(require_physical(bad), NonPhysicalState);

  bad.matrix.setZero();
  bad.matrix(0, 0) = 1.5;
  bad.matrix(1, 1) = -0.5;  // negative eigenvalue
  CHECK_THROWS_AS(require_physical(bad), NonPhysicalState);

  CHECK_NOTHROW(require_physical(joint_state(kUnit, 1.0)));
}
