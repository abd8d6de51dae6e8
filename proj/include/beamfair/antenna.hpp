#pragma once

#include <string>

#include "beamfair/errors.hpp"
#include "beamfair/geometry.hpp"
#include "beamfair/units.hpp"

namespace beamfair {

// Two-level sector pattern: a flat mainlobe of width `beamwidth_deg` with the
// remaining power spread into a constant sidelobe floor.

inline void check_antenna_params(double beamwidth_deg, double sidelobe) {
    if (!(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0)) {
        throw ValidationError("antenna: beamwidth must be in (0, 360] degrees, got " +
                              std::to_string(beamwidth_deg));
    }
    if (!(sidelobe > 0.0 && sidelobe < 1.0)) {
        throw ValidationError("antenna: sidelobe gain must be in (0, 1), got " +
                              std::to_string(sidelobe));
    }
}

// Mainlobe power gain. Equals 1 at 360° (omnidirectional) and grows as the
// beam narrows; total radiated power is conserved:
//   gain * theta + sidelobe * (2*pi - theta) == 2*pi.
inline double mainlobe_gain(double beamwidth_deg, double sidelobe) {
    check_antenna_params(beamwidth_deg, sidelobe);
    const double theta = deg_to_rad(beamwidth_deg);
    return (2.0 * kPi - (2.0 * kPi - theta) * sidelobe) / theta;
}

// Gain at angular offset |gamma| from boresight. The mainlobe covers
// offsets strictly below half the beamwidth; the half-width boundary itself
// falls into the sidelobe.
inline double sector_gain(double beamwidth_deg, double sidelobe, double offset_deg) {
    check_antenna_params(beamwidth_deg, sidelobe);
    const double offset = angular_diff(offset_deg, 0.0);
    return offset < beamwidth_deg / 2.0 ? mainlobe_gain(beamwidth_deg, sidelobe) : sidelobe;
}

}  // namespace beamfair
