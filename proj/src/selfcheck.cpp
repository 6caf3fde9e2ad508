#include "fqnmr/selfcheck.hpp"

#include <cmath>

#include "fqnmr/constants.hpp"
#include "fqnmr/oracle.hpp"
#include "fqnmr/protocols.hpp"
#include "fqnmr/rfdrive.hpp"

namespace fqnmr {

namespace {

SuiteResult steady_state_suite() {
  SuiteResult r{"steady_state", 0, 0.0, 1e-8, false};
  const double gt = 1e4;           // rate scale
  const double p_th = 2.0e-4;      // typical thermal polarization
  const double s = 0.5 + 0.5 * p_th;
  for (int il = 0; il < 10; ++il) {
    const double lam = gt * std::pow(10.0, -3.0 + 6.0 * il / 9.0);
    for (int id = 0; id < 10; ++id) {
      // detunings from 0 out to twice the linewidth
      const double dw = (id == 0) ? 0.0
                                  : gt * 2.0 * std::pow(10.0, -3.0 + 3.0 * (id - 1) / 8.0);
      for (int ig = 0; ig < 10; ++ig) {
        const double g = gt * std::pow(10.0, -4.0 + 4.0 * ig / 9.0);
        const double closed = steady_state_depolarization(lam, dw, g);
        const double sz_th = 2.0 * s - 1.0;
        const double sz_st =
            oracle::lindblad_steady_state_numeric(lam, dw, g, s);
        const double numeric = (sz_th - sz_st) / sz_th;
        r.max_dev = std::max(r.max_dev, std::abs(closed - numeric));
        ++r.cases;
      }
    }
  }
  r.pass = r.max_dev <= r.tolerance;
  return r;
}

SuiteResult erfc_average_suite() {
  SuiteResult r{"erfc_average", 0, 0.0, 1e-9, false};
  const double gt = 1e4;
  const double g = 1e-3 * gt;
  for (int i = 0; i < 61; ++i) {
    const double lam = gt * std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    const double closed = averaged_depolarization(lam, g, gt);
    const double quad = oracle::gauss_average_numeric(
        [&](double dw) { return steady_state_depolarization(lam, dw, g); }, gt);
    r.max_dev = std::max(r.max_dev, std::abs(closed - quad) / quad);
    ++r.cases;
  }
  r.pass = r.max_dev <= r.tolerance;
  return r;
}

SuiteResult dd_filter_suite() {
  SuiteResult r{"dd_filter", 0, 0.0, 1e-6, false};
  const double omega = 1.0;
  // Perturbative corrections to the extracted factor scale as
  // (coupling/omega)^2; this ratio leaves an order of magnitude of headroom.
  const double coupling = 1e-5;
  for (int n : {1, 2, 3, 4, 6, 8}) {
    for (int i = 0; i < 16; ++i) {
      const double phi = 0.3 + (4.0 * pi - 0.6) * i / 15.0;
      const double f_closed = dd_filter_factor(n, phi);
      if (f_closed < 0.05) continue;  // relative comparison near zeros is noise
      const double dip = oracle::dd_signal_dip_bruteforce(
          omega, coupling, phi / omega, n, oracle::SpinInit::plus);
      const double f_oracle = dip * omega * omega / (coupling * coupling);
      r.max_dev = std::max(r.max_dev, std::abs(f_oracle - f_closed) / f_closed);
      ++r.cases;

      // initial-state independence
      const double dip_minus = oracle::dd_signal_dip_bruteforce(
          omega, coupling, phi / omega, n, oracle::SpinInit::minus);
      const double dip_mixed = oracle::dd_signal_dip_bruteforce(
          omega, coupling, phi / omega, n, oracle::SpinInit::mixed);
      r.max_dev = std::max({r.max_dev, std::abs(dip - dip_minus) / dip,
                            std::abs(dip - dip_mixed) / dip});
    }
  }
  r.pass = r.max_dev <= r.tolerance;
  return r;
}

SuiteResult ramsey_suite() {
  SuiteResult r{"ramsey", 0, 0.0, 1.0, false};  // dev in units of (dw tau)^3
  RamseyParams params;
  params.repetitions = 1;
  for (double phase : {1e-2, 1e-3, 1e-4}) {
    for (double gamma_tau : {0.0, 0.5, 1.0, 2.0}) {
      for (double vis : {0.5, 0.79, 1.0}) {
        params.tau = 1e-6;
        params.gamma_phi = gamma_tau / params.tau;
        params.visibility = vis;
        const double dw = phase / params.tau;
        const double lin = ramsey_signal(dw, params);
        const double exact =
            oracle::ramsey_bruteforce(dw, params.tau, params.gamma_phi, vis);
        r.max_dev =
            std::max(r.max_dev, std::abs(lin - exact) / (phase * phase * phase));
        ++r.cases;
      }
    }
  }
  r.pass = r.max_dev <= r.tolerance;
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selfcheck() {
  return {steady_state_suite(), erfc_average_suite(), dd_filter_suite(),
          ramsey_suite()};
}

}  // namespace fqnmr
