#pragma once

#include <cmath>
#include <cstdint>

namespace dirichlet::rng {

// SplitMix64 finalizer. Full-avalanche 64-bit mix.
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-based random stream addressed by (seed, stream index).
// Two streams with the same seed and different indices are decorrelated by
// the mix of the index into the starting counter, so per-sample streams can
// be drawn in any order by any number of workers with identical results.
class Stream {
public:
    Stream(uint64_t seed, uint64_t index)
        : counter_(mix64((seed + 0x9E3779B97F4A7C15ULL) ^
                         mix64(index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL))) {}

    uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix64(counter_);
    }

    // Uniform on the open interval (0,1); safe under log().
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Uniform angle in [-pi, pi).
    double angle() {
        constexpr double two_pi = 6.283185307179586476925286766559;
        return (static_cast<double>(next_u64() >> 11) * 0x1p-53 - 0.5) * two_pi;
    }

    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    // Gamma(shape, 1) by the Marsaglia-Tsang squeeze.
    double gamma(double shape) {
        if (shape < 1.0) {
            double g = gamma(shape + 1.0);
            return g * std::pow(uniform(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Beta(beta, 1) by inverse CDF: P(V <= v) = v^beta.
    double beta_power(double beta) {
        return std::pow(uniform(), 1.0 / beta);
    }

private:
    uint64_t counter_;
};

} // namespace dirichlet::rng
