#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "beamfair/errors.hpp"

namespace beamfair {

// Jain's fairness index (sum v)^2 / (N * sum v^2); 1 for equal allocations,
// 1/N when a single entry carries everything.
inline double jain_index(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("jain_index: empty vector");
    double sum = 0.0;
    double sum_sq = 0.0;
    bool any_positive = false;
    for (double v : values) {
        if (!(v >= 0.0)) throw ValidationError("jain_index: values must be nonnegative");
        if (v > 0.0) any_positive = true;
        sum += v;
        sum_sq += v * v;
    }
    if (!any_positive) throw ValidationError("jain_index: all-zero vector has no defined index");
    return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

inline double mean(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("mean: empty vector");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// q-quantile with linear interpolation between closest ranks,
// q in [0, 1]; q = 0.05 and q = 0.95 are the reported percentiles.
inline double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw ValidationError("percentile: empty vector");
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("percentile: q must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

}  // namespace beamfair
