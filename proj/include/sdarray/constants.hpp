#pragma once

#include <cmath>
#include <numbers>

namespace sdarray {

inline constexpr double kPi = std::numbers::pi;
// Wavelengths use the rounded propagation speed (λ = 1 mm at 300 GHz);
// η keeps its physical value.
inline constexpr double kSpeedOfLight = 3.0e8;                 // m/s
inline constexpr double kMu0 = 4.0e-7 * kPi;                   // H/m
inline constexpr double kFreeSpaceImpedance = 376.730313668;   // ohms
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kCopperConductivity = 5.7e7;           // S/m

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }
inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace sdarray
