#pragma once

#include <cmath>

#include "beamfair/errors.hpp"
#include "beamfair/units.hpp"

namespace beamfair {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Wraps an angle into [0°, 360°).
inline double wrap_360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

// Absolute angular difference wrapped into [0°, 180°].
inline double angular_diff(double a_deg, double b_deg) {
    double d = wrap_360(a_deg - b_deg);
    return d > 180.0 ? 360.0 - d : d;
}

// Bearing of the vector from->to, counterclockwise from the +x axis, in [0°, 360°).
inline double los_bearing(const Point& from, const Point& to) {
    if (from == to) {
        throw ValidationError("los_bearing: coincident points have no bearing");
    }
    return wrap_360(rad_to_deg(std::atan2(to.y - from.y, to.x - from.x)));
}

}  // namespace beamfair
