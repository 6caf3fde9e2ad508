#include "fqnmr/protocols.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"

namespace fqnmr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double dephasing_span(const DDParams& p, double tau) {
  return p.convention == DephasingTime::total ? static_cast<double>(p.n_pulses) * tau
                                              : tau;
}
}  // namespace

double ramsey_detuning(double b_dc, double gamma_prime) {
  return gamma_prime * b_dc;
}

double ramsey_signal(double detuning, const RamseyParams& p) {
  const double phase = detuning * p.tau;
  if (!(std::abs(phase) < 0.1))
    throw OutOfRegime("ramsey_signal: |detuning * tau| must stay below 0.1");
  return 0.5 + 0.5 * p.visibility * std::exp(-p.gamma_phi * p.tau) * phase;
}

double dc_uncertainty(const RamseyParams& p, double gamma_prime) {
  if (gamma_prime == 0.0)
    throw Error("dc_uncertainty: zero field sensitivity");
  return std::exp(p.gamma_phi * p.tau) /
         (p.visibility * std::abs(gamma_prime) * p.tau *
          std::sqrt(static_cast<double>(p.repetitions)));
}

double dd_filter_factor(int n, double phi) {
  if (n < 1) throw Error("dd_filter_factor: n must be >= 1");
  const double c = std::cos(0.5 * phi) - 1.0;
  const double base = c * c;
  if (n == 1) return base;
  double amp;
  if (n % 2 == 0) {
    double s = 0.0;
    for (int i = 0; i < n / 2; ++i)
      s += std::cos(0.5 * static_cast<double>(2 * i + 1) * phi);
    amp = 2.0 * s;
  } else {
    double s = 0.0;
    for (int i = 0; i < (n - 1) / 2; ++i)
      s += std::cos(static_cast<double>(i + 1) * phi);
    amp = 1.0 + 2.0 * s;
  }
  return amp * amp * base;
}

namespace {

struct SignalParts {
  double envelope;  // V e^{-Gamma T}
  double dip;       // F (gamma' B / omega)^2
  double filter;
};

SignalParts signal_parts(double b_ac, double omega, const DDParams& p,
                         double gamma_prime) {
  SignalParts s;
  s.filter = dd_filter_factor(p.n_pulses, omega * p.tau);
  const double x = gamma_prime * b_ac / omega;
  s.dip = s.filter * x * x;
  s.envelope = p.visibility * std::exp(-p.gamma_phi * dephasing_span(p, p.tau));
  return s;
}

}  // namespace

double dd_signal(double b_ac, double omega, const DDParams& p,
                 double gamma_prime) {
  const SignalParts s = signal_parts(b_ac, omega, p, gamma_prime);
  if (!(s.dip < 0.25))
    throw OutOfRegime("dd_signal: perturbative term exceeds 0.25");
  return 0.5 + s.envelope * (0.5 - s.dip);
}

double ac_uncertainty_or_inf(const DDParams& p, double gamma_prime, double omega,
                             double b_ac) {
  const SignalParts s = signal_parts(b_ac, omega, p, gamma_prime);
  const double prob = 0.5 + s.envelope * (0.5 - s.dip);
  if (!(prob > 0.0 && prob < 1.0)) return kInf;
  const double slope =
      2.0 * s.envelope * s.filter * gamma_prime * gamma_prime * b_ac /
      (omega * omega);
  if (!(slope > 0.0)) return kInf;
  return std::sqrt(prob * (1.0 - prob)) /
         (slope * std::sqrt(static_cast<double>(p.repetitions)));
}

double ac_uncertainty(const DDParams& p, double gamma_prime, double omega,
                      double b_ac) {
  if (!(b_ac > 0.0))
    throw Error("ac_uncertainty: B_ac must be > 0 for a finite slope");
  return ac_uncertainty_or_inf(p, gamma_prime, omega, b_ac);
}

TauOptimum optimize_tau_dd(const DDParams& base, double gamma_prime,
                           double omega, double b_ac) {
  if (!(omega > 0.0)) throw Error("optimize_tau_dd: omega must be > 0");
  const double t2 = 1.0 / base.gamma_phi;
  const double tau_hi = 5.0 * t2;
  const double tau_lo = tau_hi * 1e-4;
  constexpr int kScan = 2400;

  DDParams p = base;
  auto eval = [&](double tau) {
    p.tau = tau;
    return ac_uncertainty_or_inf(p, gamma_prime, omega, b_ac);
  };
  const double log_lo = std::log(tau_lo), log_hi = std::log(tau_hi);
  std::vector<double> taus(kScan);
  for (int i = 0; i < kScan; ++i) {
    taus[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                    static_cast<double>(kScan - 1));
  }
  int best = -1;
  double best_val = kInf;
  for (int i = 0; i < kScan; ++i) {
    const double v = eval(taus[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best < 0) return {tau_hi, kInf};

  // Golden-section refinement inside the bracketing grid cells.
  double a = taus[best > 0 ? best - 1 : best];
  double b = taus[best + 1 < kScan ? best + 1 : best];
  constexpr double kGold = 0.6180339887498949;
  double x1 = b - kGold * (b - a);
  double x2 = a + kGold * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 120 && (b - a) > 1e-15 * b; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGold * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGold * (b - a);
      f2 = eval(x2);
    }
  }
  TauOptimum out{taus[best], best_val};
  if (f1 < out.uncertainty) out = {x1, f1};
  if (f2 < out.uncertainty) out = {x2, f2};
  return out;
}

}  // namespace fqnmr
