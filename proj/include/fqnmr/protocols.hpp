#pragma once

#include <cstdint>

namespace fqnmr {

struct RamseyParams {
  double tau = 0.0;           // s, free-evolution time
  double gamma_phi = 0.0;     // 1/T2*, 1/s
  double visibility = 0.0;
  std::int64_t repetitions = 0;
};

// Dephasing accrues either over the whole sequence (n * tau) or over one
// block (tau). The total-time convention is the default; see README.
enum class DephasingTime { total, block };

struct DDParams {
  int n_pulses = 1;           // sequence uses 2n-1 pi pulses over n*tau
  double tau = 0.0;           // s, base block duration
  double gamma_phi = 0.0;     // 1/T2(n), 1/s
  double visibility = 0.0;
  std::int64_t repetitions = 0;
  DephasingTime convention = DephasingTime::total;
};

double ramsey_detuning(double b_dc, double gamma_prime);

// Linearized Ramsey probability 1/2 + (V/2) e^{-Gamma tau} dw tau.
// Valid for |dw * tau| < 0.1; out-of-regime throws.
double ramsey_signal(double detuning, const RamseyParams& p);

// Estimation noise of the DC field: e^{Gamma tau} / (V gamma' tau sqrt(N)).
// Minimized at tau = 1/Gamma.
double dc_uncertainty(const RamseyParams& p, double gamma_prime);

// Sequence filter factor F(n, phi) with phi = omega * tau. F >= 0,
// 4pi-periodic and even in phi; F(n, 2pi) = 4 n^2.
double dd_filter_factor(int n, double phi);

// Decoupling probability 1/2 + V e^{-Gamma T} [1/2 - F (gamma' B_ac / omega)^2].
// Perturbative; throws when F (gamma' B_ac / omega)^2 >= 0.25.
double dd_signal(double b_ac, double omega, const DDParams& p, double gamma_prime);

// Estimation noise of the AC field amplitude at the working point.
// B_ac = 0 has no slope and throws; filter zeros give +inf.
double ac_uncertainty(const DDParams& p, double gamma_prime, double omega,
                      double b_ac);

// Same quantity without throwing: +inf when the probability leaves (0, 1)
// or the slope vanishes. Used by the optimizers.
double ac_uncertainty_or_inf(const DDParams& p, double gamma_prime, double omega,
                             double b_ac);

struct TauOptimum {
  double tau = 0.0;
  double uncertainty = 0.0;  // +inf when no admissible tau exists
};

// Global minimum of ac_uncertainty over tau in (0, 5 T2]: a 2400-point log
// grid scan refined by golden section. Deterministic for fixed inputs.
TauOptimum optimize_tau_dd(const DDParams& base, double gamma_prime,
                           double omega, double b_ac);

}  // namespace fqnmr
