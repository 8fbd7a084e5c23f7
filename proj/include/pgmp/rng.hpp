#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace pgmp {

// Seeded random source used throughout the library. The engine is
// std::mt19937_64 (bit-exact by the standard) and every distribution is
// implemented here explicitly, so identical seeds give identical streams
// on any platform or standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream seed, e.g. for giving the optimizer
    // its own generator in a benchmark trial.
    static std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t raw() { return engine_(); }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Rejection keeps the draw unbiased.
    std::uint64_t uniformInt(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; consumes exactly two engine draws.
    double normal() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Eigen::VectorXd normalVector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pgmp
