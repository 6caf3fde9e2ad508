#pragma once

#include <numbers>

namespace fqnmr {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double mu0 = 1.25663706212e-6;       // N/A^2

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace fqnmr
