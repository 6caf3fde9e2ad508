#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace fqnmr::oracle {

// Brute-force references for the closed forms in protocols/rfdrive. They are
// deliberately independent of those code paths and favor exactness over
// speed.

using Matrix2c = Eigen::Matrix2cd;

// Density matrix with trace/Hermiticity/positivity enforcement.
struct TwoLevelState {
  Matrix2c rho;

  static TwoLevelState pure_plus();
  static TwoLevelState pure_minus();
  static TwoLevelState maximally_mixed();

  // Throws AccuracyError if trace, Hermiticity or positivity (eigenvalues
  // >= -1e-12) are violated.
  void check_valid() const;
};

// exp(-i H t) for Hermitian 2x2 H via the exact SU(2) closed form.
Matrix2c evolve_unitary(const Matrix2c& h, double t);

enum class SpinInit { plus, minus, mixed };

// Decoupling signal from the exact product of 2x2 propagators:
// P = 1/2 + 1/4 <(Ua^dag)^n Ub^n + h.c.>, with Ua/Ub built from the two
// qubit-conditioned spin Hamiltonians over tau/2 blocks.
double dd_signal_bruteforce(double omega, double coupling, double tau, int n,
                            SpinInit init);

// 1 - P from the same propagators, evaluated as the positive quadratic form
// <D^dag D>/4 with D = Ua^n - Ub^n. Identical in exact arithmetic; keeps
// full relative precision when the dip is tiny.
double dd_signal_dip_bruteforce(double omega, double coupling, double tau,
                                int n, SpinInit init);

// <sigma_z> of the driven-spin steady state from the null space of the 4x4
// Liouvillian (H = dw/2 sz + lambda sx, decay Gamma(1-s), pump Gamma s).
// The residual ||L rho|| on the norm-scaled Liouvillian must be < 1e-12.
double lindblad_steady_state_numeric(double lambda, double delta_omega,
                                     double gamma_relax, double s_thermal);

// Gaussian ensemble average with weight exp(-dw^2/G^2)/(G sqrt(pi)).
// Adaptive Gauss-Hermite first; integrands too sharp for it (width << G)
// fall back to adaptive Gauss-Kronrod panels. Throws AccuracyError when
// neither converges.
double gauss_average_numeric(const std::function<double(double)>& integrand,
                             double gamma_inhom);

// Ramsey probability from explicit channel composition: free evolution,
// sigma_z dephasing with p = 1/2 + e^{-Gamma tau}/2, depolarizing readout
// with eta = 1 - V, then the P_y projector.
double ramsey_bruteforce(double detuning, double tau, double gamma_phi,
                         double visibility);

}  // namespace fqnmr::oracle
