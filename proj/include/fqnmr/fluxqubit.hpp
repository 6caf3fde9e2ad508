#pragma once

#include <array>
#include <map>

#include "fqnmr/geometry.hpp"

namespace fqnmr {

// Flux-qubit working point and coherence budget. Angular frequencies
// throughout; gyromagnetic ratios are converted from Hz/T at the config
// boundary.
struct QubitParams {
  double gap = 0.0;                 // rad/s
  double detuning = 0.0;            // rad/s
  double persistent_current = 0.0;  // A
  double loop_side = 0.0;           // m
  double t2_star = 0.0;             // s, Ramsey dephasing time
  std::map<int, double> t2_dd;      // s, keyed by pi-pulse index n
  double visibility = 0.0;          // readout contrast, (0, 1]
  double t_rep = 0.0;               // s per shot
  double t_tot = 0.0;               // s total accumulation

  void validate() const;  // throws ConfigError on violated invariants
};

// Square loop of side L in the x-z plane, centered at the origin, normal
// along +y. Current circulates so the field at the center points along +y.
struct LoopGeometry {
  double side = 0.0;

  struct Segment {
    Vec3 a, b;
  };
  std::array<Segment, 4> segments() const;
};

using FieldVector = Vec3;

double qubit_frequency(const QubitParams& q);  // sqrt(eps^2 + gap^2)

// d(omega_fq)/dB_perp = (eps/omega_fq) * 2 I_p L^2 / hbar, in rad/(s T).
double field_sensitivity(const QubitParams& q);

// Gyromagnetic ratio dressed by the working point: gamma * eps / omega_fq.
double effective_gyro(const QubitParams& q, double gamma);

// Biot-Savart field of the loop (current = persistent current) at p.
// Throws SingularEvaluation for points on a wire segment.
FieldVector loop_field(const LoopGeometry& geom, double current, const Vec3& p);

// Effective DC field at the qubit per fully polarized spin at p: the
// loop-field reciprocity maps spin position to qubit detuning through the
// z component, hbar*gamma*Bz_loop/(2 I_p L^2). Odd in z.
double spin_to_qubit_dc_kernel(const QubitParams& q, const LoopGeometry& geom,
                               double gamma, const Vec3& p);

// Transverse (AC) counterpart, hbar*gamma*sqrt(Bx^2+By^2)/(2 I_p L^2).
// Non-negative, even in z.
double spin_to_qubit_ac_kernel(const QubitParams& q, const LoopGeometry& geom,
                               double gamma, const Vec3& p);

}  // namespace fqnmr
