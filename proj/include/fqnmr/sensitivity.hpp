#pragma once

#include <cstdint>
#include <optional>

#include "fqnmr/ensemble.hpp"
#include "fqnmr/protocols.hpp"
#include "fqnmr/rfdrive.hpp"

namespace fqnmr {

enum class Scheme { ramsey, dd };

// Fully resolved measurement setup shared by the solvers.
struct Scenario {
  QubitParams qubit;
  Environment env;
  double z_rf = 2e-6;                   // m, drive line stand-off
  RfReference rf_reference = RfReference::edge;
  double r_ref = 1e-6;                  // m, normalization length for maps
  std::optional<double> fixed_current;  // A; empty means optimize
  double standoff = 0.1e-6;             // m, sample-to-chip gap
  double small_height = 0.1e-6;         // m, h' for spin-number runs
  double resolution = 0.0;              // m voxel edge; 0 means default rule
  PolarizationModel polarization = PolarizationModel::exact;
  DephasingTime dd_convention = DephasingTime::total;
  SideEdgeChoice side_edge = SideEdgeChoice::z_parallel;
  int threads = 0;

  std::int64_t repetitions() const;
  double gamma_prime() const { return field_sensitivity(qubit); }
  double rf_line_z() const {
    return rf_line_position(qubit.loop_side, z_rf, rf_reference);
  }
  RamseyParams ramsey_params() const;
  DDParams dd_params(int n_pulses) const;  // throws if T2(n) is not tabled
  double voxel_edge_for(const SampleGeometry& geom) const;
};

SpinEnsemble bulk_ensemble(const Scenario& sc);

struct DriveOptimum {
  double current = 0.0;          // A
  double normalized = 0.0;       // gamma mu0 I / (linewidth * r_ref)
  double signal_per_rho = 0.0;   // |B_DC| per unit density, T m^3
};

// Saturation-weighted DC signal per unit spin density at a given current.
double ramsey_signal_per_density(const Scenario& sc, const SpinEnsemble& ens,
                                 double current);

// Picks the drive current maximizing the Ramsey signal (log grid over five
// decades around gamma mu0 I / (linewidth r_ref) = 1, golden refinement).
DriveOptimum optimize_drive_current(const Scenario& sc, const SpinEnsemble& ens);

struct SensitivityResult {
  Scheme scheme = Scheme::ramsey;
  double rho_min = 0.0;      // 1/m^3
  double rho_min_cm3 = 0.0;  // 1/cm^3
  std::optional<double> n_min;
  double signal = 0.0;       // field at rho_min, T
  double uncertainty = 0.0;  // estimation noise at rho_min, T
  double snr_mismatch = 0.0; // |signal - uncertainty| / uncertainty
  double tau = 0.0;          // s
  std::optional<DriveOptimum> drive;
  int n_pulses = 0;
  int bisection_iterations = 0;
  double bracket_log10 = 0.0;
  double voxel_edge = 0.0;   // m
};

// SNR = 1 density for the asymmetric-drive Ramsey scheme. The signal is
// linear in rho and the noise is rho-free, so no root search is needed.
// Throws NoSignalError when the saturation profile is symmetry-suppressed.
SensitivityResult min_density_ramsey(const Scenario& sc, const SpinEnsemble& ens);

// SNR = 1 density for decoupling with n pi-pulse blocks: bisection on
// log10(rho) over [16, 30] with the interaction time re-optimized at every
// candidate. Throws BracketError when no crossing exists in the bracket.
SensitivityResult min_density_dd(const Scenario& sc, const SpinEnsemble& ens,
                                 int n_pulses);

// Minimum detectable spin number for a width x width x h' sample at the
// given placement; Ramsey assumes full saturation. n_min = width^2 h' rho_min.
SensitivityResult min_spin_number(const Scenario& sc, Placement placement,
                                  double width, Scheme scheme, int n_pulses);

}  // namespace fqnmr
