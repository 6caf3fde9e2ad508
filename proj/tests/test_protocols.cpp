#include <cmath>
#include <limits>

#include "doctest.h"
#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/oracle.hpp"
#include "fqnmr/protocols.hpp"

using namespace fqnmr;

TEST_CASE("ramsey detuning and signal") {
  CHECK(ramsey_detuning(0.0, 2.85e14) == 0.0);
  CHECK(ramsey_detuning(1e-12, 2.85e14) == doctest::Approx(285.0));
  CHECK(ramsey_detuning(-1e-12, 2.85e14) < 0.0);

  RamseyParams p{1e-6, 0.0, 1.0, 10000};
  CHECK(ramsey_signal(0.0, p) == 0.5);
  CHECK(ramsey_signal(0.05 / p.tau, p) == doctest::Approx(0.525).epsilon(1e-14));
  CHECK_THROWS_AS(ramsey_signal(0.2 / p.tau, p), OutOfRegime);

  // agrees with the channel oracle to third order in the phase
  p.gamma_phi = 0.7e6;
  p.visibility = 0.79;
  for (double phase : {0.01, 0.03}) {
    const double lin = ramsey_signal(phase / p.tau, p);
    const double exact = oracle::ramsey_bruteforce(phase / p.tau, p.tau,
                                                   p.gamma_phi, p.visibility);
    CHECK(std::abs(lin - exact) < phase * phase * phase);
  }
}

TEST_CASE("dc uncertainty") {
  RamseyParams p{1e-6, 1e6, 0.79, 10000};
  CHECK(dc_uncertainty(p, 2.847315748033e14) ==
        doctest::Approx(1.2084585548251e-10).epsilon(1e-10));

  RamseyParams p4 = p;
  p4.repetitions = 4 * p.repetitions;
  CHECK(dc_uncertainty(p4, 2.85e14) ==
        doctest::Approx(0.5 * dc_uncertainty(p, 2.85e14)).epsilon(1e-14));

  CHECK_THROWS_AS(dc_uncertainty(p, 0.0), Error);
}

TEST_CASE("dc uncertainty has its unique interior minimum at tau = T2*") {
  const double t2 = 1e-6;
  RamseyParams p{0.0, 1.0 / t2, 0.79, 10000};
  int sign_changes = 0;
  double prev = 0.0, prev_d = 0.0;
  double best_tau = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i) {
    p.tau = t2 * (0.2 + 4.8 * i / 2000.0);
    const double v = dc_uncertainty(p, 2.85e14);
    if (v < best) {
      best = v;
      best_tau = p.tau;
    }
    if (i > 0) {
      const double d = v - prev;
      if (i > 1 && d > 0 && prev_d < 0) ++sign_changes;
      prev_d = d;
    }
    prev = v;
  }
  CHECK(sign_changes == 1);
  CHECK(best_tau == doctest::Approx(t2).epsilon(0.005));
}

TEST_CASE("filter factor identities") {
  CHECK(dd_filter_factor(1, 0.0) == 0.0);
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}) {
    CHECK(dd_filter_factor(n, two_pi) ==
          doctest::Approx(4.0 * n * n).epsilon(1e-12));
  }
  // periodicity and evenness
  for (int n : {1, 2, 3, 4, 6, 8}) {
    for (double phi : {0.37, 1.93, 4.41, 7.7}) {
      const double f = dd_filter_factor(n, phi);
      CHECK(dd_filter_factor(n, phi + 2.0 * two_pi) ==
            doctest::Approx(f).epsilon(1e-9));
      CHECK(dd_filter_factor(n, -phi) == doctest::Approx(f).epsilon(1e-12));
      CHECK(f >= 0.0);
    }
  }
  // the odd-n branch with n = 1 must collapse to the bare echo factor
  for (double phi : {0.3, 2.2, 5.5}) {
    const double c = std::cos(0.5 * phi) - 1.0;
    CHECK(dd_filter_factor(1, phi) == doctest::Approx(c * c).epsilon(1e-15));
  }
  CHECK_THROWS_AS(dd_filter_factor(0, 1.0), Error);
}

TEST_CASE("dd signal closed form") {
  DDParams p{1, 1e-6, 0.0, 1.0, 10000, DephasingTime::total};
  CHECK(dd_signal(0.0, 1e6, p, 2.85e14) == doctest::Approx(1.0));

  // on resonance the echo dip is 4 (gamma' B / omega)^2
  const double omega = 1e6;
  p.tau = two_pi / omega;
  const double b = 1e-12;
  const double x = 2.85e14 * b / omega;
  CHECK(dd_signal(b, omega, p, 2.85e14) ==
        doctest::Approx(1.0 - 4.0 * x * x).epsilon(1e-12));

  CHECK_THROWS_AS(dd_signal(1e-9, omega, p, 2.85e14), OutOfRegime);
}

TEST_CASE("dd signal matches the propagator oracle in the weak-coupling regime") {
  const double omega = 1.0;
  const double coupling = 1e-5;  // gamma' B
  DDParams p{1, 0.0, 0.0, 1.0, 10000, DephasingTime::total};
  for (int n : {1, 2, 3, 4, 6, 8}) {
    p.n_pulses = n;
    for (double phi : {1.1, 2.9, two_pi, 9.4}) {
      p.tau = phi / omega;
      const double filter = dd_filter_factor(n, phi);
      if (filter < 0.05) continue;
      // the closed-form dip, evaluated without the 1 - P round trip
      const double x = coupling / omega;
      const double dip_c = filter * x * x;
      CHECK(1.0 - dd_signal(coupling, omega, p, 1.0) ==
            doctest::Approx(dip_c).epsilon(1e-4));
      const double dip_e = oracle::dd_signal_dip_bruteforce(
          omega, coupling, p.tau, n, oracle::SpinInit::plus);
      CHECK(std::abs(dip_c - dip_e) / dip_e < 1e-6);
    }
  }
}

TEST_CASE("dephasing conventions differ by the sequence span") {
  DDParams p{4, 2e-6, 1e5, 0.79, 10000, DephasingTime::total};
  const double omega = 1e6;
  const double b = 1e-13;
  const double total = dd_signal(b, omega, p, 2.85e14);
  p.convention = DephasingTime::block;
  const double block = dd_signal(b, omega, p, 2.85e14);
  // block-time dephasing decays less for the same tau
  CHECK(block > total);
}

TEST_CASE("ac uncertainty") {
  DDParams p{1, 5e-6, 2e5, 0.79, 10000, DephasingTime::total};
  const double omega = 1e6;
  const double b = 1e-12;
  const double d1 = ac_uncertainty(p, 2.85e14, omega, b);
  DDParams p4 = p;
  p4.repetitions *= 4;
  CHECK(ac_uncertainty(p4, 2.85e14, omega, b) ==
        doctest::Approx(0.5 * d1).epsilon(1e-13));

  DDParams pv = p;
  pv.visibility = 1e-9;
  CHECK(ac_uncertainty(pv, 2.85e14, omega, b) > 1e6 * d1);

  CHECK_THROWS_AS(ac_uncertainty(p, 2.85e14, omega, 0.0), Error);

  // filter zero: no slope, infinite noise
  DDParams pz = p;
  pz.tau = 2.0 * two_pi / omega;  // F(1, 4pi) = 0
  CHECK(std::isinf(ac_uncertainty(pz, 2.85e14, omega, b)));
}

TEST_CASE("tau optimization sits on the first resonance when dephasing is weak") {
  const double omega = 1e6;
  DDParams p{1, 0.0, omega / 500.0, 0.79, 10000, DephasingTime::total};
  const TauOptimum opt = optimize_tau_dd(p, 2.85e14, omega, 1e-12);
  CHECK(omega * opt.tau == doctest::Approx(two_pi).epsilon(0.01));
  CHECK(std::isfinite(opt.uncertainty));
}

TEST_CASE("tau optimum is near one AC period when omega = 4 pi / T2") {
  const double t2 = 5e-6;
  const double omega = 4.0 * pi / t2;
  DDParams p{1, 0.0, 1.0 / t2, 0.79, 10000, DephasingTime::total};
  const TauOptimum opt = optimize_tau_dd(p, 2.85e14, omega, 1e-12);
  CHECK(omega * opt.tau / two_pi == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("tau optimum is locally optimal") {
  const double omega = 1e6;
  DDParams p{4, 0.0, 1.0 / 8.91e-6, 0.79, 10000, DephasingTime::total};
  const TauOptimum opt = optimize_tau_dd(p, 2.85e14, omega, 1e-12);
  DDParams q = p;
  q.tau = opt.tau * 1.001;
  CHECK(ac_uncertainty(q, 2.85e14, omega, 1e-12) >= opt.uncertainty);
  q.tau = opt.tau * 0.999;
  CHECK(ac_uncertainty(q, 2.85e14, omega, 1e-12) >= opt.uncertainty);
}
