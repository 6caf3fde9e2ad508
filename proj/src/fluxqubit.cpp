#include "fqnmr/fluxqubit.hpp"

#include <cmath>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"

namespace fqnmr {

void QubitParams::validate() const {
  if (!(gap > 0.0)) throw ConfigError("qubit: gap must be > 0");
  if (!(persistent_current > 0.0))
    throw ConfigError("qubit: persistent current must be > 0");
  if (!(loop_side > 0.0)) throw ConfigError("qubit: loop side must be > 0");
  if (!(visibility > 0.0 && visibility <= 1.0))
    throw ConfigError("qubit: visibility must be in (0, 1]");
  if (!(t2_star > 0.0)) throw ConfigError("qubit: T2* must be > 0");
  for (const auto& [n, t2] : t2_dd) {
    if (n < 1 || !(t2 > 0.0))
      throw ConfigError("qubit: T2(n) entries must have n >= 1 and T2 > 0");
  }
  if (!(t_rep > 0.0) || !(t_tot > 0.0))
    throw ConfigError("qubit: repetition and total times must be > 0");
  if (t_tot < t_rep) throw ConfigError("qubit: T_tot must be >= T_rep");
}

std::array<LoopGeometry::Segment, 4> LoopGeometry::segments() const {
  const double s = 0.5 * side;
  // Ordered so positive current gives +y field at the center.
  return {{{{s, 0, s}, {s, 0, -s}},
           {{s, 0, -s}, {-s, 0, -s}},
           {{-s, 0, -s}, {-s, 0, s}},
           {{-s, 0, s}, {s, 0, s}}}};
}

double qubit_frequency(const QubitParams& q) {
  return std::hypot(q.detuning, q.gap);
}

double field_sensitivity(const QubitParams& q) {
  return (q.detuning / qubit_frequency(q)) * 2.0 * q.persistent_current *
         q.loop_side * q.loop_side / hbar;
}

double effective_gyro(const QubitParams& q, double gamma) {
  return gamma * q.detuning / qubit_frequency(q);
}

namespace {

Vec3 segment_field(const Vec3& a, const Vec3& b, double current, const Vec3& p) {
  const Vec3 r1 = p - a;
  const Vec3 r2 = p - b;
  const double n1 = norm(r1);
  const double n2 = norm(r2);
  const double n12 = n1 * n2;
  const double den = n12 * (n12 + dot(r1, r2));
  const Vec3 u = b - a;
  const double len2 = dot(u, u);
  if (!(den > 1e-24 * len2 * len2)) {
    throw SingularEvaluation("loop_field: evaluation point on a wire segment");
  }
  const double pref = mu0 * current / (4.0 * pi) * (n1 + n2) / den;
  return cross(r1, r2) * pref;
}

}  // namespace

FieldVector loop_field(const LoopGeometry& geom, double current, const Vec3& p) {
  Vec3 total;
  for (const auto& seg : geom.segments()) {
    total += segment_field(seg.a, seg.b, current, p);
  }
  return total;
}

double spin_to_qubit_dc_kernel(const QubitParams& q, const LoopGeometry& geom,
                               double gamma, const Vec3& p) {
  const Vec3 b = loop_field(geom, q.persistent_current, p);
  return hbar * gamma * b.z /
         (2.0 * q.persistent_current * q.loop_side * q.loop_side);
}

double spin_to_qubit_ac_kernel(const QubitParams& q, const LoopGeometry& geom,
                               double gamma, const Vec3& p) {
  const Vec3 b = loop_field(geom, q.persistent_current, p);
  return hbar * gamma * std::hypot(b.x, b.y) /
         (2.0 * q.persistent_current * q.loop_side * q.loop_side);
}

}  // namespace fqnmr
