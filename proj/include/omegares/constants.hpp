#pragma once

#include <numbers>

namespace omegares::constants {

inline constexpr double speed_of_light = 2.99792458e8;          // m/s
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;        // H/m
inline constexpr double eta0 = mu0 * speed_of_light;             // Ω, free-space wave impedance
inline constexpr double copper_resistivity = 1.68e-8;            // Ω·m

inline constexpr double nv_zero_field_splitting = 2.87e9;        // Hz
inline constexpr double nv_gyromagnetic_ratio = 28.0e9;          // Hz/T (γ/2π)

}  // namespace omegares::constants
