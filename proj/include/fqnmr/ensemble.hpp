#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fqnmr/fluxqubit.hpp"

namespace fqnmr {

// Static field, temperature and spin-bath parameters shared by both
// protocols. gamma is the bare spin gyromagnetic ratio in rad/(s T).
struct Environment {
  double temperature = 0.0;  // K
  double b_ex = 0.0;         // T, applied along +z
  double gamma = 0.0;        // rad/(s T)
  double relaxation = 0.0;   // Gamma, longitudinal rate, 1/s
  double linewidth = 0.0;    // Gamma-tilde, Gaussian spread of delta-omega, 1/s

  double omega() const { return gamma * b_ex; }  // Larmor frequency
  void validate() const;
};

enum class PolarizationModel {
  exact,  // tanh(hbar*omega / 2 kB T)
  paper,  // hbar*omega / kB T, the small-x form without the factor 1/2
};

double thermal_polarization(const Environment& env, PolarizationModel mode);

// Axis-aligned spin-sample box. The sample sits above the chip plane,
// y in [standoff, standoff + size_y], centered at (center_x, center_z).
struct SampleGeometry {
  double size_x = 0.0, size_y = 0.0, size_z = 0.0;  // m
  double standoff = 0.0;                            // m, >= gap to chip plane
  double center_x = 0.0, center_z = 0.0;            // m

  void validate() const;

  // Bulk sample 2.5L x 2L x 2.5L centered over the loop.
  static SampleGeometry bulk(double loop_side, double standoff);
};

// Small-sample placements relative to the loop, used for spin-number limits.
enum class Placement {
  near_edge,    // centered above the midpoint of the x-parallel edge nearest
                // the drive line
  loop_center,  // centered above the loop
  side_edge,    // centered above the midpoint of an edge (see SideEdgeChoice)
};

enum class SideEdgeChoice {
  z_parallel,      // edge running along z
  far_x_parallel,  // x-parallel edge farthest from the drive line
};

SampleGeometry small_sample(double width, double height, double standoff,
                            double loop_side, Placement placement,
                            SideEdgeChoice side_edge = SideEdgeChoice::z_parallel);

// Uniform Cartesian voxelization of a sample box (midpoint rule).
struct VoxelGrid {
  SampleGeometry sample;
  std::size_t nx = 0, ny = 0, nz = 0;
  double dx = 0.0, dy = 0.0, dz = 0.0;

  std::size_t cells() const { return nx * ny * nz; }
  double voxel_volume() const { return dx * dy * dz; }
  double x_center(std::size_t i) const {
    return sample.center_x - 0.5 * sample.size_x + (static_cast<double>(i) + 0.5) * dx;
  }
  double y_center(std::size_t j) const {
    return sample.standoff + (static_cast<double>(j) + 0.5) * dy;
  }
  double z_center(std::size_t k) const {
    return sample.center_z - 0.5 * sample.size_z + (static_cast<double>(k) + 0.5) * dz;
  }
};

// Caps the grid at 1e8 cells; finer requests raise CapacityError.
VoxelGrid discretize(const SampleGeometry& geom, double voxel_edge);

// Default voxel edge: min(standoff, L/20) for bulk samples, further refined
// so at least four cells span the smallest sample dimension.
double default_voxel_edge(const SampleGeometry& geom, double loop_side);

// Voxelized sample with the reciprocity kernels cached. The drive line and
// any saturation profile depend only on (y, z), so the x direction is
// pre-summed: dc_kernel_yz[j*nz + k] = sum_x V * Bz_spin, and similarly for
// the squared transverse kernel.
struct SpinEnsemble {
  VoxelGrid grid;
  std::vector<double> dc_kernel_yz;   // T m^3 per unit spin density
  std::vector<double> ac_kernel2_yz;  // T^2 m^3 per unit spin density
  double ac_kernel2_total = 0.0;

  double abs_dc_kernel_sum() const;  // sum |dc_kernel_yz|, cancellation scale
};

SpinEnsemble build_ensemble(const QubitParams& q, double gamma,
                            const SampleGeometry& geom, double voxel_edge,
                            int threads);

// Saturation profile: fraction of the thermal polarization erased at (y, z).
using SaturationProfile = std::function<double(double y, double z)>;

inline double full_saturation(double, double) { return 1.0; }

// Effective DC field from the ensemble: rho * p_th * sum V Bz_spin D(y,z).
// Signed; the magnitude is what enters the SNR.
double dc_signal_field(const SpinEnsemble& ens, double rho, double p_th,
                       const SaturationProfile& profile);

// Effective AC field, sqrt(rho * sum V Bperp_spin^2). Needs no drive or
// polarization.
double ac_signal_field(const SpinEnsemble& ens, double rho);

}  // namespace fqnmr
