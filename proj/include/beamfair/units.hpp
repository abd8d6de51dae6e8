#pragma once

#include <cmath>
#include <numbers>

namespace beamfair {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// log2(1 + x) as ln(1+x)/ln(2). All rate expressions and the zero-power
// extension of the interference mapping share this one ln(2) constant.
inline double log2_1p(double x) { return std::log1p(x) / kLn2; }

}  // namespace beamfair
