#include "fqnmr/figures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/version.hpp"

namespace fqnmr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return g;
}

std::string hash_comment(const RunConfig& cfg) {
  std::ostringstream out;
  out << "config_hash=0x" << std::hex << cfg.hash();
  return out.str();
}

Table make_table(const RunConfig& cfg, const std::string& title) {
  Table t;
  t.comments.push_back("fqnmr " + std::string(kVersion));
  t.comments.push_back(hash_comment(cfg));
  t.comments.push_back(title);
  return t;
}

Table fig4_table(const RunConfig& cfg) {
  const Scenario sc = cfg.scenario();
  Table t = make_table(cfg,
                       "ensemble depolarization fraction at spin height y = "
                       "0.1 um; normalized_current = gamma*mu0*I/(linewidth*"
                       "r_ref)");
  t.header = {"normalized_current", "i_rf_a", "z_offset_over_r",
              "depolarization"};
  const double y = 0.1e-6;
  const double unit_current = sc.env.linewidth * sc.r_ref / (sc.env.gamma * mu0);
  std::vector<double> us = {0.0};
  for (double u : log_grid(0.01, 100.0, 61)) us.push_back(u);
  const std::vector<double> zetas = linear_grid(-3.0, 3.0, 121);
  for (double u : us) {
    for (double zeta : zetas) {
      const double dz = zeta * sc.r_ref;
      const double r2 = y * y + dz * dz;
      const double lam = u * sc.env.linewidth * sc.r_ref * dz / (two_pi * r2);
      const double d =
          averaged_depolarization(lam, sc.env.relaxation, sc.env.linewidth);
      t.rows.push_back({u, u * unit_current, zeta, d});
    }
  }
  return t;
}

Table fig5_table(const RunConfig& cfg) {
  const Scenario sc = cfg.scenario();
  const MapNormalization norm =
      cfg.get("conventions.fig5_normalization") == "per_column"
          ? MapNormalization::per_column
          : MapNormalization::global;
  Table t = make_table(
      cfg, std::string("normalized Ramsey detuning map; normalization = ") +
               cfg.get("conventions.fig5_normalization") +
               "; drive reference = " + cfg.get("drive.reference"));
  t.header = {"z_rf_m", "normalized_current", "normalized_current_over_2pi",
              "i_rf_a", "signal_ratio"};
  const SpinEnsemble ens = bulk_ensemble(sc);
  const double unit_current = sc.env.linewidth * sc.r_ref / (sc.env.gamma * mu0);
  const std::vector<double> z_rf = linear_grid(0.5e-6, 4.0e-6, 15);
  std::vector<double> us = {0.0};
  for (double u : log_grid(0.02, 50.0, 67)) us.push_back(u);
  std::vector<double> currents;
  currents.reserve(us.size());
  for (double u : us) currents.push_back(u * unit_current);
  const DriveMap map = drive_map(sc.qubit, sc.env, ens, z_rf, currents,
                                 sc.rf_reference, sc.polarization, norm);
  for (std::size_t iz = 0; iz < z_rf.size(); ++iz) {
    for (std::size_t ii = 0; ii < currents.size(); ++ii) {
      t.rows.push_back({z_rf[iz], us[ii], us[ii] / two_pi, currents[ii],
                        map.ratio[iz * currents.size() + ii]});
    }
  }
  return t;
}

Table fig6_table(const RunConfig& cfg) {
  Table t = make_table(
      cfg, "minimum detectable density vs stand-off and loop size at the "
           "configured field; echo = single-pulse decoupling");
  t.header = {"loop_side_m", "standoff_m",    "rho_ramsey_percm3",
              "rho_echo_percm3", "ratio_echo_over_ramsey", "drive_norm_star",
              "tau_echo_s",  "voxel_edge_m"};
  for (double side : {2e-6, 6e-6, 10e-6}) {
    for (double h : log_grid(0.1e-6, 2e-6, 9)) {
      Scenario sc = cfg.scenario();
      sc.qubit.loop_side = side;
      sc.standoff = h;
      const SpinEnsemble ens = bulk_ensemble(sc);
      const SensitivityResult ram = min_density_ramsey(sc, ens);
      const SensitivityResult echo = min_density_dd(sc, ens, 1);
      t.rows.push_back({side, h, ram.rho_min_cm3, echo.rho_min_cm3,
                        echo.rho_min / ram.rho_min,
                        ram.drive ? ram.drive->normalized : kNaN, echo.tau,
                        ens.grid.dx});
    }
  }
  return t;
}

Table fig7_table(const RunConfig& cfg) {
  Table t = make_table(
      cfg, std::string("minimum detectable density vs external field; "
                       "drive current policy = ") +
               cfg.get("conventions.fig7_drive"));
  t.header = {"b_ex_t",     "rho_ramsey_percm3", "rho_echo_percm3",
              "drive_norm_star", "tau_echo_s",   "snr_mismatch_echo"};
  Scenario sc = cfg.scenario();
  const SpinEnsemble ens = bulk_ensemble(sc);
  const bool freeze = cfg.get("conventions.fig7_drive") == "freeze";
  for (double b : log_grid(0.5e-3, 5e-3, 21)) {
    sc.env.b_ex = b;
    const SensitivityResult ram = min_density_ramsey(sc, ens);
    if (freeze && !sc.fixed_current && ram.drive)
      sc.fixed_current = ram.drive->current;
    const SensitivityResult echo = min_density_dd(sc, ens, 1);
    t.rows.push_back({b, ram.rho_min_cm3, echo.rho_min_cm3,
                      ram.drive ? ram.drive->normalized : kNaN, echo.tau,
                      echo.snr_mismatch});
  }
  return t;
}

Table fig8_table(const RunConfig& cfg) {
  Table t = make_table(
      cfg, std::string("minimum detectable density vs field and pulse "
                       "number; dephasing convention = ") +
               cfg.get("conventions.dd_dephasing") +
               "; fields above 4e-3 T exceed the device operating guideline");
  t.header = {"b_ex_t", "n_pulses", "rho_percm3", "tau_s", "snr_mismatch"};
  Scenario sc = cfg.scenario();
  const SpinEnsemble ens = bulk_ensemble(sc);
  for (double b : log_grid(1e-3, 10e-3, 13)) {
    sc.env.b_ex = b;
    for (int n : {1, 2, 4, 6, 8, 10}) {
      const SensitivityResult r = min_density_dd(sc, ens, n);
      t.rows.push_back({b, static_cast<double>(n), r.rho_min_cm3, r.tau,
                        r.snr_mismatch});
    }
  }
  return t;
}

Table fig10_table(const RunConfig& cfg) {
  Table t = make_table(
      cfg, "minimum detectable spin number vs sample width at the configured "
           "field; a = Ramsey over the near edge (full saturation), "
           "b = decoupling over the center, c = decoupling over a side edge; "
           "empty cells mean no SNR=1 crossing below 1e30 /m^3");
  t.header = {"width_m",      "n_min_a_ramsey", "n_min_b_dd",
              "n_min_c_dd",   "rho_a_percm3",   "rho_b_percm3",
              "rho_c_percm3", "voxel_edge_m"};
  const Scenario sc = cfg.scenario();
  const int n_dd = 8;  // the plan is defined with eight pulse blocks
  for (double width : log_grid(0.1e-6, 10e-6, 21)) {
    auto run = [&](Placement p, Scheme scheme) -> SensitivityResult {
      return min_spin_number(sc, p, width, scheme, n_dd);
    };
    double na = kNaN, nb = kNaN, nc = kNaN;
    double ra = kNaN, rb = kNaN, rc = kNaN, edge = kNaN;
    try {
      const SensitivityResult r = run(Placement::near_edge, Scheme::ramsey);
      na = *r.n_min;
      ra = r.rho_min_cm3;
      edge = r.voxel_edge;
    } catch (const NoSignalError&) {
    }
    try {
      const SensitivityResult r = run(Placement::loop_center, Scheme::dd);
      nb = *r.n_min;
      rb = r.rho_min_cm3;
      edge = r.voxel_edge;
    } catch (const BracketError&) {
    }
    try {
      const SensitivityResult r = run(Placement::side_edge, Scheme::dd);
      nc = *r.n_min;
      rc = r.rho_min_cm3;
      edge = r.voxel_edge;
    } catch (const BracketError&) {
    }
    t.rows.push_back({width, na, nb, nc, ra, rb, rc, edge});
  }
  return t;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig4", "fig5", "fig6",
                                                 "fig7", "fig8", "fig10"};
  return names;
}

Table sweep(const RunConfig& cfg, const std::string& plan) {
  if (plan == "fig4") return fig4_table(cfg);
  if (plan == "fig5") return fig5_table(cfg);
  if (plan == "fig6") return fig6_table(cfg);
  if (plan == "fig7") return fig7_table(cfg);
  if (plan == "fig8") return fig8_table(cfg);
  if (plan == "fig10") return fig10_table(cfg);
  throw ConfigError("unknown sweep plan '" + plan + "'");
}

}  // namespace fqnmr
