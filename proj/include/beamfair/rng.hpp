#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "beamfair/errors.hpp"
#include "beamfair/units.hpp"

namespace beamfair {

// Versioned RNG contract. Streams are mt19937_64 with all variate
// transformations implemented here (never the implementation-defined
// std distributions), so a (seed, trial, purpose) triple reproduces the
// exact same draws on any conforming standard library.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/v1";

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Mixed seed for the (seed, index, purpose) sub-stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                 std::string_view purpose) {
    std::uint64_t s = detail::splitmix64(seed);
    s = detail::splitmix64(s ^ index);
    s = detail::splitmix64(s ^ detail::fnv1a64(purpose));
    return s;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Independent sub-stream for (seed, index, purpose).
    static RandomStream derive(std::uint64_t seed, std::uint64_t index, std::string_view purpose) {
        return RandomStream(derive_seed(seed, index, purpose));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw ValidationError("RandomStream::below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return r % n;
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace beamfair
