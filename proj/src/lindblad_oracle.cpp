#include "jclab/lindblad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jclab/errors.hpp"

namespace jclab {
namespace {

// d rho / dt for H = (g/2)(|+><+| - |-><-|)(a + a+) plus the k-dissipator.
// Works block-wise: for atom blocks (s, r) with signs sgn_s, sgn_r,
//   dB(n,m) = -i(g/2) [ sgn_s (sqrt(n) B(n-1,m) + sqrt(n+1) B(n+1,m))
//                     - sgn_r (sqrt(m) B(n,m-1) + sqrt(m+1) B(n,m+1)) ]
//           + k [ sqrt((n+1)(m+1)) B(n+1,m+1) - (n+m)/2 B(n,m) ].
void lindblad_rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out,
                  double g, double k, int fock_dim, const double* sq) {
  const int nf = fock_dim + 1;
  const Eigen::Index dim = 2 * nf;
  const double hg = 0.5 * g;

  for (int r = 0; r < 2; ++r) {
    const double sgn_r = (r == 0) ? 1.0 : -1.0;
    for (int s = 0; s < 2; ++s) {
      const double sgn_s = (s == 0) ? 1.0 : -1.0;
      for (int m = 0; m < nf; ++m) {
        const Complex* col = rho.data() + (r * nf + m) * dim + s * nf;
        const Complex* left = (m > 0) ? col - dim : nullptr;
        const Complex* right = (m + 1 < nf) ? col + dim : nullptr;
        Complex* dst = out.data() + (r * nf + m) * dim + s * nf;
        const double sqm = sq[m];
        const double sqm1 = sq[m + 1];
        for (int n = 0; n < nf; ++n) {
          Complex ham = 0.0;
          if (n > 0) ham += sgn_s * sq[n] * col[n - 1];
          if (n + 1 < nf) ham += sgn_s * sq[n + 1] * col[n + 1];
          if (left) ham -= sgn_r * sqm * left[n];
          if (right) ham -= sgn_r * sqm1 * right[n];
          // multiply by -i g/2 without a complex product
          Complex val(hg * ham.imag(), -hg * ham.real());
          if (k > 0.0) {
            Complex diss = -0.5 * double(n + m) * col[n];
            if (right && n + 1 < nf) diss += sq[n + 1] * sqm1 * right[n + 1];
            val += k * diss;
          }
          dst[n] = val;
        }
      }
    }
  }
}

struct Integrator {
  const SystemParams& params;
  int fock_dim;
  double max_top_pop;
  std::vector<double> sq;
  Eigen::MatrixXcd k1, k2, k3, k4, tmp, full, half;

  Integrator(const SystemParams& p, int nfock, double top_bound)
      : params(p), fock_dim(nfock), max_top_pop(top_bound) {
    const Eigen::Index dim = 2 * (nfock + 1);
    sq.resize(nfock + 2);
    for (int n = 0; n < nfock + 2; ++n) sq[n] = std::sqrt(double(n));
    for (auto* m : {&k1, &k2, &k3, &k4, &tmp, &full, &half})
      m->resize(dim, dim);
  }

  void rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
    lindblad_rhs(rho, out, params.g, params.k, fock_dim, sq.data());
  }

  void rk4_step(Eigen::MatrixXcd& rho, double h) {
    rhs(rho, k1);
    tmp = rho + (0.5 * h) * k1;
    rhs(tmp, k2);
    tmp = rho + (0.5 * h) * k2;
    rhs(tmp, k3);
    tmp = rho + h * k3;
    rhs(tmp, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  void check_health(const Eigen::MatrixXcd& rho, double t) const {
    const double trace_err = std::abs(rho.trace() - Complex(1.0));
    if (trace_err > 1e-8) {
      std::ostringstream msg;
      msg << "trace drifted by " << trace_err << " at t=" << t;
      throw StepFailure(msg.str());
    }
    double herm = 0.0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      for (Eigen::Index i = j; i < rho.rows(); ++i)
        herm = std::max(herm, std::abs(rho(i, j) - std::conj(rho(j, i))));
    if (herm > 1e-10) {
      std::ostringstream msg;
      msg << "Hermiticity lost (" << herm << ") at t=" << t;
      throw StepFailure(msg.str());
    }
    const int nf = fock_dim + 1;
    const double top = rho(fock_dim, fock_dim).real() +
                       rho(nf + fock_dim, nf + fock_dim).real();
    if (top > max_top_pop) {
      std::ostringstream msg;
      msg << "population " << top << " of Fock level " << fock_dim
          << " exceeds " << max_top_pop << " at t=" << t;
      throw TruncationTooSmall(msg.str());
    }
  }

  // Fixed-step integration of [t0, t1] with steps of at most dt_max.
  void advance_fixed(Eigen::MatrixXcd& rho, double t0, double t1, double dt_max) {
    const double span = t1 - t0;
    if (span <= 0.0) return;
    const long steps = std::max(1L, long(std::ceil(span / dt_max - 1e-12)));
    const double h = span / double(steps);
    for (long i = 0; i < steps; ++i) {
      rk4_step(rho, h);
      check_health(rho, t0 + double(i + 1) * h);
    }
  }

  // Step-doubling error control: accept when the full-step/half-step
  // difference (scaled by 1/15) stays below tol.
  void advance_adaptive(Eigen::MatrixXcd& rho, double t0, double t1,
                        double dt_start, double tol) {
    double t = t0;
    double dt = std::min(dt_start, t1 - t0);
    const double dt_min = (t1 - t0) * 1e-12;
    while (t < t1 - 1e-15 * t1) {
      dt = std::min(dt, t1 - t);
      full = rho;
      rk4_step(full, dt);
      half = rho;
      rk4_step(half, 0.5 * dt);
      rk4_step(half, 0.5 * dt);
      const double err = (full - half).cwiseAbs().maxCoeff() / 15.0;
      if (err <= tol) {
        rho = half;
        t += dt;
        check_health(rho, t);
        const double grow = (err > 0.0)
            ? std::clamp(0.9 * std::pow(tol / err, 0.2), 1.0, 5.0) : 5.0;
        dt *= grow;
      } else {
        dt *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
        if (dt < dt_min)
          throw StepFailure("step size underflow: tolerance unreachable");
      }
    }
  }
};

Eigen::MatrixXcd initial_state(const SystemParams& params, int fock_dim) {
  const int nf = fock_dim + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * nf, 2 * nf);
  const Complex cp = std::cos(0.5 * params.theta);
  const Complex cm = std::exp(Complex(0.0, params.phi)) * std::sin(0.5 * params.theta);
  rho(0, 0) = cp * std::conj(cp);
  rho(0, nf) = cp * std::conj(cm);
  rho(nf, 0) = cm * std::conj(cp);
  rho(nf, nf) = cm * std::conj(cm);
  return rho;
}

}  // namespace

int default_fock_dim(const SystemParams& params, double t_max) {
  const double reach = (params.k > 0.0) ? params.g / params.k
                                        : 0.5 * params.g * t_max;
  return int(std::ceil(10.0 + 12.0 * reach * reach));
}

double default_time_step(const SystemParams& params) {
  double dt = 0.001 / params.g;
  if (params.k > 0.0) dt = std::min(dt, 0.001 / params.k);
  return dt;
}

std::vector<FockJointState> evolve_lindblad_at(const SystemParams& params,
                                               std::span<const double> times,
                                               const LindbladOptions& opts) {
  params.validate();
  if (times.empty()) throw std::invalid_argument("no sample times given");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0)
      throw std::invalid_argument("sample times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw std::invalid_argument("sample times must be ascending");
  }

  const double t_max = times.back();
  const int nfock = (opts.fock_dim > 0) ? opts.fock_dim
                                        : default_fock_dim(params, t_max);
  const double dt = (opts.dt > 0.0) ? opts.dt : default_time_step(params);

  Integrator integ(params, nfock, opts.max_top_population);
  Eigen::MatrixXcd rho = initial_state(params, nfock);

  std::vector<FockJointState> snapshots;
  snapshots.reserve(times.size());
  double t = 0.0;
  for (double target : times) {
    if (target > t) {
      if (opts.tol > 0.0)
        integ.advance_adaptive(rho, t, target, dt, opts.tol);
      else
        integ.advance_fixed(rho, t, target, dt);
      t = target;
    }
    snapshots.push_back({rho, nfock, target});
  }
  return snapshots;
}

FockJointState evolve_lindblad(const SystemParams& params, double t_final,
                               const LindbladOptions& opts) {
  if (!std::isfinite(t_final) || t_final < 0.0)
    throw std::invalid_argument("t_final must be finite and >= 0");
  const double times[1] = {t_final};
  return std::move(evolve_lindblad_at(params, times, opts).front());
}

ProjectedState project_to_qubit(const FockJointState& state, Complex alpha,
                                double max_leakage) {
  const FieldQubitBasis basis = field_qubit_basis(alpha);
  const int nf = state.fock_dim + 1;
  if (state.matrix.rows() != 2 * nf || state.matrix.cols() != 2 * nf)
    throw std::invalid_argument("state matrix does not match fock_dim");

  const CoherentVector plus = coherent_fock(alpha, state.fock_dim, 1e-8);
  const CoherentVector minus = coherent_fock(-alpha, state.fock_dim, 1e-8);
  Eigen::MatrixXcd v(nf, 2);
  v.col(0) = basis.v1(0) * plus.coeff + basis.v1(1) * minus.coeff;
  v.col(1) = basis.v2(0) * plus.coeff + basis.v2(1) * minus.coeff;

  // Basis kets ordered {+v1, +v2, -v1, -v2} to match TwoQubitState.
  Eigen::MatrixXcd kets = Eigen::MatrixXcd::Zero(2 * nf, 4);
  kets.block(0, 0, nf, 2) = v;
  kets.block(nf, 2, nf, 2) = v;

  ProjectedState out;
  out.state.matrix = kets.adjoint() * state.matrix * kets;
  out.leakage = (state.matrix.trace() - out.state.matrix.trace()).real();
  if (out.leakage > max_leakage) {
    std::ostringstream msg;
    msg << "leakage " << out.leakage << " outside span{|alpha>,|-alpha>} "
        << "exceeds " << max_leakage;
    throw ExcessLeakage(msg.str());
  }
  return out;
}

Eigen::MatrixXcd displacement_operator(Complex beta, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const int nf = n_max + 1;
  // exp(beta a+ - beta* a) = exp(i K) with Hermitian K = -i beta a+ + i beta* a.
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(nf, nf);
  for (int n = 0; n + 1 < nf; ++n) {
    gen(n + 1, n) = Complex(0.0, -1.0) * beta * std::sqrt(double(n + 1));
    gen(n, n + 1) = Complex(0.0, 1.0) * std::conj(beta) * std::sqrt(double(n + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  Eigen::VectorXcd phases(nf);
  for (int n = 0; n < nf; ++n)
    phases[n] = std::exp(Complex(0.0, es.eigenvalues()[n]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace jclab
