#include "fqnmr/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"

namespace fqnmr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::int64_t Scenario::repetitions() const {
  return static_cast<std::int64_t>(std::floor(qubit.t_tot / qubit.t_rep));
}

RamseyParams Scenario::ramsey_params() const {
  RamseyParams p;
  p.tau = qubit.t2_star;  // analytic optimum of the noise
  p.gamma_phi = 1.0 / qubit.t2_star;
  p.visibility = qubit.visibility;
  p.repetitions = repetitions();
  return p;
}

DDParams Scenario::dd_params(int n_pulses) const {
  auto it = qubit.t2_dd.find(n_pulses);
  if (it == qubit.t2_dd.end())
    throw ConfigError("no T2 tabled for n = " + std::to_string(n_pulses));
  DDParams p;
  p.n_pulses = n_pulses;
  p.gamma_phi = 1.0 / it->second;
  p.visibility = qubit.visibility;
  p.repetitions = repetitions();
  p.convention = dd_convention;
  return p;
}

double Scenario::voxel_edge_for(const SampleGeometry& geom) const {
  return resolution > 0.0 ? resolution
                          : default_voxel_edge(geom, qubit.loop_side);
}

SpinEnsemble bulk_ensemble(const Scenario& sc) {
  const SampleGeometry geom =
      SampleGeometry::bulk(sc.qubit.loop_side, sc.standoff);
  return build_ensemble(sc.qubit, sc.env.gamma, geom, sc.voxel_edge_for(geom),
                        sc.threads);
}

double ramsey_signal_per_density(const Scenario& sc, const SpinEnsemble& ens,
                                 double current) {
  const RfLine line{sc.rf_line_z(), current};
  const double p_th = thermal_polarization(sc.env, sc.polarization);
  auto profile = [&](double y, double z) {
    const double lam = rf_coupling(line, {0.0, y, z}, sc.env.gamma);
    return averaged_depolarization(lam, sc.env.relaxation, sc.env.linewidth);
  };
  return std::abs(dc_signal_field(ens, 1.0, p_th, profile));
}

DriveOptimum optimize_drive_current(const Scenario& sc, const SpinEnsemble& ens) {
  const double unit_current =
      sc.env.linewidth * sc.r_ref / (sc.env.gamma * mu0);
  auto eval = [&](double u) {
    return ramsey_signal_per_density(sc, ens, u * unit_current);
  };

  constexpr int kScan = 241;  // 40 per decade over [1e-3, 1e3]
  double best_u = 1.0, best = -1.0;
  int best_i = 0;
  std::vector<double> us(kScan);
  for (int i = 0; i < kScan; ++i) {
    us[i] = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / (kScan - 1));
    const double v = eval(us[i]);
    if (v > best) {
      best = v;
      best_u = us[i];
      best_i = i;
    }
  }
  double a = us[best_i > 0 ? best_i - 1 : 0];
  double b = us[best_i + 1 < kScan ? best_i + 1 : kScan - 1];
  constexpr double kGold = 0.6180339887498949;
  double x1 = b - kGold * (b - a), x2 = a + kGold * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-12 * b; ++it) {
    if (f1 >= f2) {
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
  if (f1 > best) {
    best = f1;
    best_u = x1;
  }
  if (f2 > best) {
    best = f2;
    best_u = x2;
  }
  return {best_u * unit_current, best_u, best};
}

namespace {

void check_dc_cancellation(const Scenario& sc, const SpinEnsemble& ens,
                           double signal_per_rho) {
  const double p_th = thermal_polarization(sc.env, sc.polarization);
  const double scale = p_th * ens.abs_dc_kernel_sum();
  if (!(signal_per_rho > 1e-9 * scale)) {
    throw NoSignalError(
        "ramsey: DC signal cancels by symmetry (|B_DC|/scale = " +
        std::to_string(scale > 0 ? signal_per_rho / scale : 0.0) + ")");
  }
}

SensitivityResult ramsey_result_from_signal(const Scenario& sc,
                                            const SpinEnsemble& ens,
                                            double signal_per_rho,
                                            std::optional<DriveOptimum> drive) {
  check_dc_cancellation(sc, ens, signal_per_rho);
  const RamseyParams params = sc.ramsey_params();
  const double noise = dc_uncertainty(params, sc.gamma_prime());
  SensitivityResult r;
  r.scheme = Scheme::ramsey;
  r.rho_min = noise / signal_per_rho;
  r.rho_min_cm3 = r.rho_min * 1e-6;
  r.signal = signal_per_rho * r.rho_min;
  r.uncertainty = noise;
  r.snr_mismatch = std::abs(r.signal - noise) / noise;
  r.tau = params.tau;
  r.drive = drive;
  r.voxel_edge = ens.grid.dx;
  return r;
}

}  // namespace

SensitivityResult min_density_ramsey(const Scenario& sc, const SpinEnsemble& ens) {
  DriveOptimum drive;
  if (sc.fixed_current) {
    drive.current = *sc.fixed_current;
    drive.normalized =
        sc.env.gamma * mu0 * drive.current / (sc.env.linewidth * sc.r_ref);
    drive.signal_per_rho = ramsey_signal_per_density(sc, ens, drive.current);
  } else {
    drive = optimize_drive_current(sc, ens);
  }
  return ramsey_result_from_signal(sc, ens, drive.signal_per_rho, drive);
}

SensitivityResult min_density_dd(const Scenario& sc, const SpinEnsemble& ens,
                                 int n_pulses) {
  if (!(ens.ac_kernel2_total > 0.0))
    throw NoSignalError("dd: transverse kernel sum vanished");
  const DDParams params = sc.dd_params(n_pulses);
  const double gp = sc.gamma_prime();
  const double omega = sc.env.omega();

  // log10(SNR) at a candidate density, with tau re-optimized.
  auto log_snr = [&](double log_rho) {
    const double b_ac = ac_signal_field(ens, std::pow(10.0, log_rho));
    const TauOptimum opt = optimize_tau_dd(params, gp, omega, b_ac);
    if (!std::isfinite(opt.uncertainty)) return -kInf;
    return std::log10(b_ac / opt.uncertainty);
  };

  double lo = 16.0, hi = 30.0;
  const double f_lo = log_snr(lo);
  const double f_hi = log_snr(hi);
  if (!(f_lo < 0.0) || !(f_hi > 0.0)) {
    throw BracketError(
        "dd: SNR=1 not bracketed in rho = [1e16, 1e30] /m^3 "
        "(log10 SNR at the endpoints: " +
        std::to_string(f_lo) + ", " + std::to_string(f_hi) + ")");
  }
  constexpr int kIters = 24;
  for (int it = 0; it < kIters; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_snr(mid) < 0.0 ? lo : hi) = mid;
  }
  const double log_rho = 0.5 * (lo + hi);

  SensitivityResult r;
  r.scheme = Scheme::dd;
  r.rho_min = std::pow(10.0, log_rho);
  r.rho_min_cm3 = r.rho_min * 1e-6;
  r.signal = ac_signal_field(ens, r.rho_min);
  const TauOptimum final_opt = optimize_tau_dd(params, gp, omega, r.signal);
  r.uncertainty = final_opt.uncertainty;
  r.snr_mismatch = std::abs(r.signal - r.uncertainty) / r.uncertainty;
  r.tau = final_opt.tau;
  r.n_pulses = n_pulses;
  r.bisection_iterations = kIters;
  r.bracket_log10 = hi - lo;
  r.voxel_edge = ens.grid.dx;
  return r;
}

SensitivityResult min_spin_number(const Scenario& sc, Placement placement,
                                  double width, Scheme scheme, int n_pulses) {
  const SampleGeometry geom =
      small_sample(width, sc.small_height, sc.standoff, sc.qubit.loop_side,
                   placement, sc.side_edge);
  const SpinEnsemble ens = build_ensemble(sc.qubit, sc.env.gamma, geom,
                                          sc.voxel_edge_for(geom), sc.threads);
  SensitivityResult r;
  if (scheme == Scheme::ramsey) {
    // Strong driving saturates every spin; the signal needs no drive profile.
    const double p_th = thermal_polarization(sc.env, sc.polarization);
    const double per_rho =
        std::abs(dc_signal_field(ens, 1.0, p_th, full_saturation));
    r = ramsey_result_from_signal(sc, ens, per_rho, std::nullopt);
  } else {
    r = min_density_dd(sc, ens, n_pulses);
  }
  r.n_min = r.rho_min * width * width * sc.small_height;
  return r;
}

}  // namespace fqnmr
