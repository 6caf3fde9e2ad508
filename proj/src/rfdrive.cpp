#include "fqnmr/rfdrive.hpp"

#include <cmath>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/fluxqubit.hpp"
#include "fqnmr/special.hpp"

namespace fqnmr {

double rf_line_position(double loop_side, double z_rf, RfReference ref) {
  return ref == RfReference::edge ? 0.5 * loop_side + z_rf : z_rf;
}

double rf_coupling(const RfLine& line, const Vec3& p, double gamma) {
  const double dz = p.z - line.z_position;
  const double r2 = p.y * p.y + dz * dz;
  if (!(r2 > 0.0)) throw SingularEvaluation("rf_coupling: point on the drive line");
  // cos(theta)/r = dz/r^2
  return gamma * mu0 * line.current * dz / (two_pi * r2);
}

double steady_state_depolarization(double lambda_rf, double delta_omega,
                                   double gamma_relax) {
  if (!(gamma_relax > 0.0))
    throw Error("steady_state_depolarization: relaxation rate must be > 0");
  const double l2 = 8.0 * lambda_rf * lambda_rf;
  return l2 / (gamma_relax * gamma_relax + l2 + 4.0 * delta_omega * delta_omega);
}

double averaged_depolarization(double lambda_rf, double gamma_relax,
                               double gamma_inhom) {
  if (!(gamma_relax > 0.0) || !(gamma_inhom > 0.0))
    throw Error("averaged_depolarization: rates must be > 0");
  const double a = std::hypot(gamma_relax, std::sqrt(8.0) * lambda_rf);
  return std::sqrt(pi) * 4.0 * lambda_rf * lambda_rf /
         (gamma_inhom * a) * erfcx(a / (2.0 * gamma_inhom));
}

DriveMap drive_map(const QubitParams& q, const Environment& env,
                   const SpinEnsemble& ens, const std::vector<double>& z_rf,
                   const std::vector<double>& currents, RfReference ref,
                   PolarizationModel pol, MapNormalization normalization) {
  if (z_rf.empty() || currents.empty())
    throw ConfigError("drive_map: empty grid");
  const double p_th = thermal_polarization(env, pol);
  DriveMap map;
  map.z_rf = z_rf;
  map.currents = currents;
  map.ratio.assign(z_rf.size() * currents.size(), 0.0);
  map.ridge_current.assign(z_rf.size(), 0.0);

  double best = -1.0;
  for (std::size_t iz = 0; iz < z_rf.size(); ++iz) {
    RfLine line{rf_line_position(q.loop_side, z_rf[iz], ref), 0.0};
    double col_best = -1.0;
    std::size_t col_arg = 0;
    for (std::size_t ii = 0; ii < currents.size(); ++ii) {
      line.current = currents[ii];
      auto profile = [&](double y, double z) {
        const double lam = rf_coupling(line, {0.0, y, z}, env.gamma);
        return averaged_depolarization(lam, env.relaxation, env.linewidth);
      };
      const double detuning = std::abs(
          field_sensitivity(q) * dc_signal_field(ens, 1.0, p_th, profile));
      map.ratio[iz * currents.size() + ii] = detuning;
      if (detuning > col_best) {
        col_best = detuning;
        col_arg = ii;
      }
      if (detuning > best) {
        best = detuning;
        map.argmax_z = iz;
        map.argmax_i = ii;
      }
    }
    map.ridge_current[iz] = currents[col_arg];
    if (normalization == MapNormalization::per_column && col_best > 0.0) {
      for (std::size_t ii = 0; ii < currents.size(); ++ii)
        map.ratio[iz * currents.size() + ii] /= col_best;
    }
  }
  map.max_detuning = best;
  if (normalization == MapNormalization::global && best > 0.0) {
    for (double& v : map.ratio) v /= best;
  }
  return map;
}

}  // namespace fqnmr
