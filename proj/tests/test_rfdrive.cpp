#include <cmath>

#include "doctest.h"
#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/oracle.hpp"
#include "fqnmr/rfdrive.hpp"

#include <algorithm>
#include <vector>

using namespace fqnmr;

namespace {
constexpr double kProtonGamma = two_pi * 42.6e6;
constexpr double kGt = 1e4;        // linewidth scale used across these tests
constexpr double kGr = 1e-3 * kGt; // relaxation
}  // namespace

TEST_CASE("rf line position references") {
  CHECK(rf_line_position(2e-6, 2e-6, RfReference::edge) ==
        doctest::Approx(3e-6));
  CHECK(rf_line_position(2e-6, 2e-6, RfReference::center) ==
        doctest::Approx(2e-6));
}

TEST_CASE("rf coupling geometry") {
  const RfLine line{0.0, 1e-3};
  // directly above the wire: cos(theta) = 0
  CHECK(rf_coupling(line, {0.0, 1e-6, 0.0}, kProtonGamma) == 0.0);
  // in-plane point 2 um away: cos(theta) = 1
  CHECK(rf_coupling(line, {0.0, 0.0, 2e-6}, kProtonGamma) ==
        doctest::Approx(26766.369423156).epsilon(1e-12));
  // 1/r falloff
  const double l1 = rf_coupling(line, {0.0, 0.0, 2e-6}, kProtonGamma);
  const double l2 = rf_coupling(line, {0.0, 0.0, 4e-6}, kProtonGamma);
  CHECK(l2 == doctest::Approx(0.5 * l1).epsilon(1e-14));
  // magnitude bound gamma mu0 I / (2 pi r)
  const double bound = kProtonGamma * mu0 * line.current / (two_pi * 2e-6);
  CHECK(std::abs(rf_coupling(line, {0.0, 1.2e-6, 1.6e-6}, kProtonGamma)) <=
        bound * (2e-6 / 2e-6) + 1e-12);
  CHECK_THROWS_AS(rf_coupling(line, {0.5e-6, 0.0, 0.0}, kProtonGamma),
                  SingularEvaluation);
}

TEST_CASE("steady-state depolarization closed form") {
  CHECK(steady_state_depolarization(0.0, 0.3 * kGt, kGr) == 0.0);
  CHECK(steady_state_depolarization(1e9, 0.0, kGr) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // frozen value for (lambda, dw, Gamma) = (1, 0.7, 1e-3) * linewidth
  CHECK(steady_state_depolarization(1.0 * kGt, 0.7 * kGt, 1e-3 * kGt) ==
        doctest::Approx(0.80321277076177).epsilon(1e-13));
  // exactly 1/2 at lambda = Gamma / (2 sqrt(2)), zero detuning
  const double half_point = kGr / (2.0 * std::sqrt(2.0));
  CHECK(steady_state_depolarization(half_point, 0.0, kGr) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // even in lambda and detuning
  CHECK(steady_state_depolarization(-3e3, 2e3, kGr) ==
        steady_state_depolarization(3e3, -2e3, kGr));
}

TEST_CASE("steady-state closed form equals the Liouvillian null state") {
  const double s = 0.5 + 0.5 * 2.0e-4;
  for (double lam : {1e-3 * kGt, 0.1 * kGt, 1.0 * kGt, 31.6 * kGt}) {
    for (double dw : {0.0, 0.7 * kGt, 2.0 * kGt}) {
      const double closed = steady_state_depolarization(lam, dw, kGr);
      const double sz_th = 2.0 * s - 1.0;
      const double sz_st = oracle::lindblad_steady_state_numeric(lam, dw, kGr, s);
      CHECK(std::abs((sz_th - sz_st) / sz_th - closed) < 1e-8);
    }
  }
}

TEST_CASE("averaged depolarization") {
  CHECK(averaged_depolarization(0.0, kGr, kGt) == 0.0);
  // frozen value for (lambda, Gamma, linewidth) = (0.5, 1e-3, 1) * 1e3
  CHECK(averaged_depolarization(500.0, 1.0, 1000.0) ==
        doctest::Approx(0.6556792924189019).epsilon(1e-13));
  // saturates from below
  CHECK(averaged_depolarization(1e3 * kGt, kGr, kGt) > 0.999);
  CHECK(averaged_depolarization(1e3 * kGt, kGr, kGt) < 1.0);
  // even in lambda, monotone in |lambda|
  CHECK(averaged_depolarization(-7e3, kGr, kGt) ==
        averaged_depolarization(7e3, kGr, kGt));
  double prev = -1.0;
  for (double lam = 1e1; lam < 1e8; lam *= 3.0) {
    const double cur = averaged_depolarization(lam, kGr, kGt);
    CHECK(cur > prev);
    CHECK(cur <= steady_state_depolarization(lam, 0.0, kGr) + 1e-15);
    prev = cur;
  }
}

TEST_CASE("averaged depolarization equals the quadrature average") {
  for (double ratio : {1e-3, 1e-1, 1.0, 1e2, 1e3}) {
    const double lam = ratio * kGt;
    const double closed = averaged_depolarization(lam, kGr, kGt);
    const double quad = oracle::gauss_average_numeric(
        [&](double dw) { return steady_state_depolarization(lam, dw, kGr); },
        kGt);
    CHECK(std::abs(closed - quad) / quad < 1e-9);
  }
}

TEST_CASE("drive map bookkeeping") {
  QubitParams q;
  q.gap = two_pi * 5.37e9;
  q.detuning = two_pi * 0.112e9;
  q.persistent_current = 180e-9;
  q.loop_side = 2e-6;
  q.t2_star = 1e-6;
  q.t2_dd = {{1, 5e-6}};
  q.visibility = 0.79;
  q.t_rep = 100e-6;
  q.t_tot = 1.0;
  Environment env;
  env.temperature = 20e-3;
  env.b_ex = 4e-3;
  env.gamma = kProtonGamma;
  env.linewidth = kGt;
  env.relaxation = kGr;
  const SpinEnsemble ens = build_ensemble(
      q, env.gamma, SampleGeometry::bulk(q.loop_side, 0.1e-6), 0.4e-6, 2);

  const std::vector<double> zs = {1.5e-6, 2.5e-6};
  std::vector<double> currents = {0.0};
  for (int i = 0; i < 25; ++i) currents.push_back(1e-5 * std::pow(10.0, i / 12.0));
  const DriveMap map = drive_map(q, env, ens, zs, currents, RfReference::edge,
                                 PolarizationModel::exact);
  // the normalized map peaks at exactly one and at the recorded argmax
  CHECK(map.ratio[map.argmax_z * currents.size() + map.argmax_i] ==
        doctest::Approx(1.0).epsilon(1e-15));
  for (double v : map.ratio) CHECK(v <= 1.0 + 1e-15);
  // undriven column is dead
  for (std::size_t iz = 0; iz < zs.size(); ++iz) {
    CHECK(map.ratio[iz * currents.size()] == 0.0);
  }
  CHECK(map.max_detuning > 0.0);
  // ridge currents are members of the current grid
  for (double rc : map.ridge_current) {
    CHECK(std::count(currents.begin(), currents.end(), rc) == 1);
  }
  CHECK_THROWS_AS(
      drive_map(q, env, ens, {}, currents, RfReference::edge,
                PolarizationModel::exact),
      ConfigError);
}

TEST_CASE("no overflow deep in the saturated regime") {
  // naive exp((Gamma^2+8 lambda^2)/4 linewidth^2) overflows here
  const double v = averaged_depolarization(1e6 * kGt, kGr, kGt);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}
