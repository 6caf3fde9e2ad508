#include <cmath>

#include "doctest.h"
#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/oracle.hpp"

using namespace fqnmr;
using namespace fqnmr::oracle;

TEST_CASE("unitary evolution closed form") {
  Matrix2c sz;
  sz << 1, 0, 0, -1;
  const Matrix2c u = evolve_unitary(0.5 * 3.0 * sz, 0.7);
  CHECK(std::abs(u(0, 0) - std::exp(std::complex<double>(0, -1.05))) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(std::complex<double>(0, 1.05))) < 1e-14);
  // unitarity
  CHECK((u * u.adjoint() - Matrix2c::Identity()).norm() < 1e-14);
}

TEST_CASE("dd bruteforce basic properties") {
  CHECK(dd_signal_bruteforce(1.0, 0.0, 2.3, 3, SpinInit::plus) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // initial-state independence
  for (int n : {1, 2, 5}) {
    for (double tau : {1.7, 6.28}) {
      const double pp = dd_signal_bruteforce(1.0, 0.02, tau, n, SpinInit::plus);
      const double pm = dd_signal_bruteforce(1.0, 0.02, tau, n, SpinInit::minus);
      const double px = dd_signal_bruteforce(1.0, 0.02, tau, n, SpinInit::mixed);
      CHECK(std::abs(pp - pm) < 1e-12);
      CHECK(std::abs(pp - px) < 1e-12);
    }
  }

  // symmetric under coupling reversal
  CHECK(dd_signal_bruteforce(1.0, 0.03, 2.0, 2, SpinInit::plus) ==
        doctest::Approx(dd_signal_bruteforce(1.0, -0.03, 2.0, 2,
                                             SpinInit::plus))
            .epsilon(1e-14));
}

TEST_CASE("dd bruteforce reproduces the echo dip at resonance") {
  const double omega = 1.0, g = 1e-3;
  const double p = dd_signal_bruteforce(omega, g, two_pi / omega, 1,
                                        SpinInit::plus);
  const double closed = 1.0 - 4.0 * g * g / (omega * omega);
  CHECK(std::abs(p - closed) / closed < 1e-6);
}

TEST_CASE("lindblad steady state") {
  const double s = 0.5 + 1e-4;
  // undriven: thermal value 2s - 1
  CHECK(lindblad_steady_state_numeric(0.0, 0.0, 10.0, s) ==
        doctest::Approx(2.0 * s - 1.0).epsilon(1e-10));
  // strongly driven: fully depolarized
  CHECK(std::abs(lindblad_steady_state_numeric(1e8, 0.0, 10.0, s)) < 1e-9);
  // closed-form reconstruction at a generic point
  const double lam = 7e3, dw = 3e3, g = 12.0;
  const double sz_st = lindblad_steady_state_numeric(lam, dw, g, s);
  const double sz_th = 2.0 * s - 1.0;
  const double frac = 8 * lam * lam / (g * g + 8 * lam * lam + 4 * dw * dw);
  CHECK(std::abs((sz_th - sz_st) / sz_th - frac) < 1e-8);

  CHECK_THROWS_AS(lindblad_steady_state_numeric(1.0, 0.0, 0.0, s), Error);
}

TEST_CASE("gaussian ensemble average") {
  // weight normalization
  CHECK(gauss_average_numeric([](double) { return 3.25; }, 1e4) ==
        doctest::Approx(3.25).epsilon(1e-13));
  // odd integrand
  CHECK(std::abs(gauss_average_numeric([](double x) { return x; }, 1e4)) <
        1e-9);
  // a narrow Lorentzian needs the panel fallback
  const double g = 1e4, width = 3.0;
  const double avg = gauss_average_numeric(
      [&](double x) { return width * width / (x * x + width * width); }, g);
  // int w(x) a^2/(x^2+a^2) ~ a sqrt(pi)/g for a << g
  CHECK(avg == doctest::Approx(width * std::sqrt(pi) / g).epsilon(1e-3));
}

TEST_CASE("low-frequency average of the echo integrand is linewidth-free") {
  const double omega = 1e6, gt = 1e-3 * omega;
  const double tau = two_pi / omega;
  auto integrand = [&](double dw) {
    const double w = omega + dw;
    const double c = std::cos(0.5 * w * tau) - 1.0;
    return c * c / (w * w);
  };
  const double avg = gauss_average_numeric(integrand, gt);
  const double c0 = std::cos(0.5 * omega * tau) - 1.0;
  const double leading = c0 * c0 / (omega * omega);
  CHECK(std::abs(avg - leading) / leading < 50.0 * (gt / omega) * (gt / omega));
}

TEST_CASE("ramsey channel oracle") {
  CHECK(ramsey_bruteforce(0.0, 1e-6, 1e5, 0.8) == doctest::Approx(0.5));
  CHECK(ramsey_bruteforce(0.5 * pi / 1e-6, 1e-6, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // generic point equals 1/2 + (V/2) e^{-Gamma tau} sin(dw tau)
  const double dw = 0.3e6, tau = 2e-6, g = 0.4e6, v = 0.77;
  CHECK(ramsey_bruteforce(dw, tau, g, v) ==
        doctest::Approx(0.5 + 0.5 * v * std::exp(-g * tau) *
                                  std::sin(dw * tau))
            .epsilon(1e-13));
}

TEST_CASE("density-matrix validity is enforced") {
  TwoLevelState s = TwoLevelState::pure_plus();
  CHECK_NOTHROW(s.check_valid());
  s.rho(0, 0) = 0.9;  // trace broken
  CHECK_THROWS_AS(s.check_valid(), AccuracyError);
}
