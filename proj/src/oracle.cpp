#include "fqnmr/oracle.hpp"

#include <cmath>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/special.hpp"

namespace fqnmr::oracle {

namespace {

using Complex = std::complex<double>;
const Complex kI{0.0, 1.0};

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c pauli_y() {
  Matrix2c m;
  m << 0, Complex{0, -1}, Complex{0, 1}, 0;
  return m;
}

Matrix2c pauli_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TwoLevelState TwoLevelState::pure_plus() {
  TwoLevelState s;
  s.rho << 0.5, 0.5, 0.5, 0.5;
  return s;
}

TwoLevelState TwoLevelState::pure_minus() {
  TwoLevelState s;
  s.rho << 0.5, -0.5, -0.5, 0.5;
  return s;
}

TwoLevelState TwoLevelState::maximally_mixed() {
  TwoLevelState s;
  s.rho << 0.5, 0, 0, 0.5;
  return s;
}

void TwoLevelState::check_valid() const {
  if (std::abs(rho.trace() - 1.0) > 1e-12)
    throw AccuracyError("TwoLevelState: trace departed from 1");
  if ((rho - rho.adjoint()).norm() > 1e-12)
    throw AccuracyError("TwoLevelState: not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw AccuracyError("TwoLevelState: negative eigenvalue");
}

Matrix2c evolve_unitary(const Matrix2c& h, double t) {
  // H = c0 I + b . sigma with real c0, b for Hermitian H.
  const Complex c0c = 0.5 * (h(0, 0) + h(1, 1));
  const double c0 = c0c.real();
  const double bx = h(0, 1).real();
  const double by = -h(0, 1).imag();
  const double bz = 0.5 * (h(0, 0) - h(1, 1)).real();
  const double b = std::sqrt(bx * bx + by * by + bz * bz);
  Matrix2c u = Matrix2c::Identity() * std::cos(b * t);
  if (b > 0.0) {
    const Complex f = -kI * std::sin(b * t) / b;
    u += f * (bx * pauli_x() + by * pauli_y() + bz * pauli_z());
  }
  return std::exp(-kI * c0 * t) * u;
}

double dd_signal_dip_bruteforce(double omega, double coupling, double tau,
                                int n, SpinInit init) {
  if (n < 1) throw Error("dd_signal_bruteforce: n must be >= 1");
  const Matrix2c h0 = 0.5 * omega * pauli_z() + 0.5 * coupling * pauli_x();
  const Matrix2c h1 = 0.5 * omega * pauli_z() - 0.5 * coupling * pauli_x();
  const Matrix2c u0 = evolve_unitary(h0, 0.5 * tau);
  const Matrix2c u1 = evolve_unitary(h1, 0.5 * tau);
  const Matrix2c ua = u1 * u0;
  const Matrix2c ub = u0 * u1;
  Matrix2c uan = Matrix2c::Identity(), ubn = Matrix2c::Identity();
  for (int i = 0; i < n; ++i) {
    uan = ua * uan;
    ubn = ub * ubn;
  }
  TwoLevelState st;
  switch (init) {
    case SpinInit::plus:
      st = TwoLevelState::pure_plus();
      break;
    case SpinInit::minus:
      st = TwoLevelState::pure_minus();
      break;
    case SpinInit::mixed:
      st = TwoLevelState::maximally_mixed();
      break;
  }
  st.check_valid();
  // With unitary Ua, Ub the signal 1/2 + <(Ua^n)^dag Ub^n + h.c.>/4 equals
  // 1 - <D^dag D>/4 with D = Ua^n - Ub^n exactly; the quadratic form keeps
  // full relative precision on the dip for weak coupling.
  const Matrix2c d = uan - ubn;
  return 0.25 * (st.rho * d.adjoint() * d).trace().real();
}

double dd_signal_bruteforce(double omega, double coupling, double tau, int n,
                            SpinInit init) {
  return 1.0 - dd_signal_dip_bruteforce(omega, coupling, tau, n, init);
}

double lindblad_steady_state_numeric(double lambda, double delta_omega,
                                     double gamma_relax, double s_thermal) {
  if (!(gamma_relax > 0.0))
    throw Error("lindblad_steady_state_numeric: Gamma = 0 leaves the steady "
                "state non-unique");
  const Matrix2c h = 0.5 * delta_omega * pauli_z() + lambda * pauli_x();
  Matrix2c sp;  // raising |1><0| in the {|1>, |0>} basis of sigma_z = diag(1,-1)
  sp << 0, 1, 0, 0;
  const Matrix2c sm = sp.adjoint();

  auto kron = [](const Matrix2c& a, const Matrix2c& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };

  Eigen::Matrix4cd liou = -kI * (kron(Matrix2c::Identity(), h) -
                                 kron(h.transpose(), Matrix2c::Identity()));
  auto add_dissipator = [&](const Matrix2c& jop, double rate) {
    const Matrix2c jdj = jop.adjoint() * jop;
    liou += rate * (kron(jop.conjugate(), jop) -
                    0.5 * kron(Matrix2c::Identity(), jdj) -
                    0.5 * kron(jdj.transpose(), Matrix2c::Identity()));
  };
  add_dissipator(sm, gamma_relax * (1.0 - s_thermal));
  add_dissipator(sp, gamma_relax * s_thermal);

  // Null vector on the norm-scaled operator keeps the residual criterion
  // meaningful across twelve decades of rates.
  const double scale = liou.cwiseAbs().maxCoeff();
  const Eigen::Matrix4cd scaled = liou / scale;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(scaled, Eigen::ComputeFullV);
  const Eigen::Vector4cd v = svd.matrixV().col(3);
  if ((scaled * v).norm() > 1e-12)
    throw AccuracyError("lindblad_steady_state_numeric: residual above 1e-12");

  Matrix2c rho;
  rho << v(0), v(2), v(1), v(3);  // column-major unvec
  // The null vector carries an arbitrary global phase; remove it via the
  // largest diagonal (real positive in the true state) before Hermitizing.
  const Complex d =
      std::abs(rho(0, 0)) >= std::abs(rho(1, 1)) ? rho(0, 0) : rho(1, 1);
  rho *= std::conj(d) / std::abs(d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  TwoLevelState st{rho};
  st.check_valid();
  return (rho * pauli_z()).trace().real();
}

double gauss_average_numeric(const std::function<double(double)>& integrand,
                             double gamma_inhom) {
  if (!(gamma_inhom > 0.0))
    throw Error("gauss_average_numeric: linewidth must be > 0");
  // Orders double until two consecutive estimates agree.
  double prev = 0.0;
  bool have_prev = false;
  for (int order : {64, 96, 128, 192, 256}) {
    const HermiteRule rule = gauss_hermite(order);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * integrand(gamma_inhom * rule.nodes[i]);
    }
    sum /= std::sqrt(pi);
    if (have_prev &&
        std::abs(sum - prev) <= 1e-12 * std::max(1.0, std::abs(sum))) {
      return sum;
    }
    prev = sum;
    have_prev = true;
  }
  // Structure narrower than the node spacing (e.g. a Lorentzian core of
  // width Gamma << linewidth): resolve it with adaptive panels instead.
  auto weighted = [&](double dw) {
    const double t = dw / gamma_inhom;
    return integrand(dw) * std::exp(-t * t) / (gamma_inhom * std::sqrt(pi));
  };
  // Mean |integrand| from the widest Hermite rule sets the cancellation
  // scale for odd or sign-changing integrands.
  double abs_scale = 0.0;
  {
    const HermiteRule rule = gauss_hermite(256);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      abs_scale += rule.weights[i] * std::abs(integrand(gamma_inhom * rule.nodes[i]));
    }
    abs_scale /= std::sqrt(pi);
  }
  const double span = 9.0 * gamma_inhom;  // Gaussian tail beyond is < 1e-35
  return integrate_gk(weighted, -span, span, 1e-13, abs_scale);
}

double ramsey_bruteforce(double detuning, double tau, double gamma_phi,
                         double visibility) {
  TwoLevelState st = TwoLevelState::pure_plus();
  const Matrix2c u = evolve_unitary(0.5 * detuning * pauli_z(), tau);
  st.rho = (u * st.rho * u.adjoint()).eval();
  st.check_valid();

  const double p = 0.5 + 0.5 * std::exp(-gamma_phi * tau);
  const Matrix2c sz = pauli_z();
  st.rho = (p * st.rho + (1.0 - p) * sz * st.rho * sz).eval();
  st.check_valid();

  const double eta = 1.0 - visibility;
  st.rho = ((1.0 - eta) * st.rho +
            eta * 0.5 * Matrix2c::Identity()).eval();
  st.check_valid();

  const Matrix2c proj_y = 0.5 * (Matrix2c::Identity() + pauli_y());
  return (st.rho * proj_y).trace().real();
}

}  // namespace fqnmr::oracle
