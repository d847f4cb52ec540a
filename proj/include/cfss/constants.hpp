#pragma once

#include <numbers>

namespace cfss {

inline constexpr double kPi = std::numbers::pi;

// Physical constants (SI)
inline constexpr double kSpeedOfLight = 299792458.0;            // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kVacuumPermeability = 1.25663706212e-6; // H/m

// Free-space wave impedance, 120*pi convention used for all circuit-model
// terminations in this toolchain.
inline constexpr double kFreeSpaceImpedance = 120.0 * kPi; // ohm

inline constexpr double kMmPerMeter = 1e3;

} // namespace cfss
