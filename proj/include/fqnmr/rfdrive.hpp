#pragma once

#include <cstddef>
#include <vector>

#include "fqnmr/ensemble.hpp"

namespace fqnmr {

// Straight drive line parallel to x in the chip plane y = 0.
struct RfLine {
  double z_position = 0.0;  // m, absolute z of the wire in the loop frame
  double current = 0.0;     // A, amplitude
};

enum class RfReference {
  edge,    // z_rf measured from the nearest loop edge
  center,  // z_rf measured from the loop center
};

// Absolute wire position for a stand-off z_rf under the chosen reference.
double rf_line_position(double loop_side, double z_rf, RfReference ref);

// Drive coupling of a spin at p: gamma * mu0 * I * cos(theta) / (2 pi r),
// where r is the distance from the wire and theta the angle between the
// wire-to-spin vector and z. Signed; zero directly above the wire.
double rf_coupling(const RfLine& line, const Vec3& p, double gamma);

// Fraction of the thermal polarization erased in the driven steady state at
// fixed detuning delta_omega: 8 lambda^2 / (Gamma^2 + 8 lambda^2 + 4 dw^2).
double steady_state_depolarization(double lambda_rf, double delta_omega,
                                   double gamma_relax);

// The same fraction averaged over the Gaussian detuning spread of width
// gamma_inhom, evaluated in the overflow-safe scaled-erfc form. Monotone in
// |lambda_rf|, in [0, 1).
double averaged_depolarization(double lambda_rf, double gamma_relax,
                               double gamma_inhom);

enum class MapNormalization { global, per_column };

// Ramsey detuning map over drive-line position and current, normalized by
// its maximum. ratio is row-major with index iz * currents.size() + ii.
struct DriveMap {
  std::vector<double> z_rf;      // m
  std::vector<double> currents;  // A
  std::vector<double> ratio;
  double max_detuning = 0.0;              // rad/s before normalization
  std::size_t argmax_z = 0, argmax_i = 0;
  std::vector<double> ridge_current;      // per z_rf, argmax over current
};

DriveMap drive_map(const QubitParams& q, const Environment& env,
                   const SpinEnsemble& ens, const std::vector<double>& z_rf,
                   const std::vector<double>& currents, RfReference ref,
                   PolarizationModel pol,
                   MapNormalization normalization = MapNormalization::global);

}  // namespace fqnmr
