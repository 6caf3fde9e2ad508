#include "fqnmr/ensemble.hpp"

#include <cmath>
#include <string>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/parallel.hpp"

namespace fqnmr {

void Environment::validate() const {
  if (!(temperature > 0.0)) throw ConfigError("environment: temperature must be > 0");
  if (!(b_ex > 0.0)) throw ConfigError("environment: external field must be > 0");
  if (!(gamma > 0.0)) throw ConfigError("environment: gyromagnetic ratio must be > 0");
  if (!(relaxation > 0.0)) throw ConfigError("environment: relaxation rate must be > 0");
  if (!(linewidth > 0.0)) throw ConfigError("environment: linewidth must be > 0");
}

double thermal_polarization(const Environment& env, PolarizationModel mode) {
  const double x = hbar * env.omega() / (k_boltzmann * env.temperature);
  const double p = (mode == PolarizationModel::exact) ? std::tanh(0.5 * x) : x;
  if (!(p > 0.0 && p < 1.0))
    throw OutOfRegime("thermal_polarization: value outside (0,1)");
  return p;
}

void SampleGeometry::validate() const {
  if (!(size_x > 0.0 && size_y > 0.0 && size_z > 0.0))
    throw ConfigError("sample: all dimensions must be > 0");
  if (!(standoff > 0.0)) throw ConfigError("sample: standoff must be > 0");
}

SampleGeometry SampleGeometry::bulk(double loop_side, double standoff) {
  SampleGeometry g;
  g.size_x = 2.5 * loop_side;
  g.size_y = 2.0 * loop_side;
  g.size_z = 2.5 * loop_side;
  g.standoff = standoff;
  return g;
}

SampleGeometry small_sample(double width, double height, double standoff,
                            double loop_side, Placement placement,
                            SideEdgeChoice side_edge) {
  SampleGeometry g;
  g.size_x = width;
  g.size_y = height;
  g.size_z = width;
  g.standoff = standoff;
  switch (placement) {
    case Placement::near_edge:
      g.center_z = 0.5 * loop_side;  // drive line sits beyond +z
      break;
    case Placement::loop_center:
      break;
    case Placement::side_edge:
      if (side_edge == SideEdgeChoice::z_parallel) {
        g.center_x = 0.5 * loop_side;
      } else {
        g.center_z = -0.5 * loop_side;
      }
      break;
  }
  return g;
}

VoxelGrid discretize(const SampleGeometry& geom, double voxel_edge) {
  geom.validate();
  if (!(voxel_edge > 0.0)) throw ConfigError("discretize: voxel edge must be > 0");
  VoxelGrid g;
  g.sample = geom;
  g.nx = static_cast<std::size_t>(std::ceil(geom.size_x / voxel_edge));
  g.ny = static_cast<std::size_t>(std::ceil(geom.size_y / voxel_edge));
  g.nz = static_cast<std::size_t>(std::ceil(geom.size_z / voxel_edge));
  g.nx = std::max<std::size_t>(g.nx, 1);
  g.ny = std::max<std::size_t>(g.ny, 1);
  g.nz = std::max<std::size_t>(g.nz, 1);
  const double cells = static_cast<double>(g.nx) * static_cast<double>(g.ny) *
                       static_cast<double>(g.nz);
  if (cells > 1e8) {
    throw CapacityError(
        "discretize: grid exceeds 1e8 voxels (" + std::to_string(g.nx) + "x" +
        std::to_string(g.ny) + "x" + std::to_string(g.nz) +
        "); coarsen run.resolution_m or shrink the sample");
  }
  g.dx = geom.size_x / static_cast<double>(g.nx);
  g.dy = geom.size_y / static_cast<double>(g.ny);
  g.dz = geom.size_z / static_cast<double>(g.nz);
  return g;
}

double default_voxel_edge(const SampleGeometry& geom, double loop_side) {
  double edge = std::min(geom.standoff, loop_side / 20.0);
  double min_dim = std::min({geom.size_x, geom.size_y, geom.size_z});
  return std::min(edge, min_dim / 4.0);
}

double SpinEnsemble::abs_dc_kernel_sum() const {
  double s = 0.0;
  for (double v : dc_kernel_yz) s += std::abs(v);
  return s;
}

SpinEnsemble build_ensemble(const QubitParams& q, double gamma,
                            const SampleGeometry& geom, double voxel_edge,
                            int threads) {
  SpinEnsemble ens;
  ens.grid = discretize(geom, voxel_edge);
  const VoxelGrid& g = ens.grid;
  const std::size_t slots = g.ny * g.nz;
  ens.dc_kernel_yz.assign(slots, 0.0);
  ens.ac_kernel2_yz.assign(slots, 0.0);

  const LoopGeometry loop{q.loop_side};
  const double kscale =
      hbar * gamma / (2.0 * q.persistent_current * q.loop_side * q.loop_side);
  const double vol = g.voxel_volume();

  // One task per (y, z) column; each column is summed serially over x, so
  // the stored values do not depend on the thread count.
  parallel_for(slots, threads, [&](std::size_t s) {
    const std::size_t j = s / g.nz;
    const std::size_t k = s % g.nz;
    const double y = g.y_center(j);
    const double z = g.z_center(k);
    double dc = 0.0, ac2 = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) {
      const Vec3 b = loop_field(loop, q.persistent_current,
                                {g.x_center(i), y, z});
      dc += b.z;
      ac2 += b.x * b.x + b.y * b.y;
    }
    ens.dc_kernel_yz[s] = vol * kscale * dc;
    ens.ac_kernel2_yz[s] = vol * kscale * kscale * ac2;
  });

  double total = 0.0;
  for (double v : ens.ac_kernel2_yz) total += v;
  ens.ac_kernel2_total = total;
  return ens;
}

double dc_signal_field(const SpinEnsemble& ens, double rho, double p_th,
                       const SaturationProfile& profile) {
  const VoxelGrid& g = ens.grid;
  double sum = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    const double y = g.y_center(j);
    for (std::size_t k = 0; k < g.nz; ++k) {
      sum += ens.dc_kernel_yz[j * g.nz + k] * profile(y, g.z_center(k));
    }
  }
  return rho * p_th * sum;
}

double ac_signal_field(const SpinEnsemble& ens, double rho) {
  return std::sqrt(rho * ens.ac_kernel2_total);
}

}  // namespace fqnmr
