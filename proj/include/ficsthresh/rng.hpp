#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fics {

/// Deterministic random stream. The engine (mt19937_64) is fully specified by
/// the standard; the variate mappings are coded here explicitly because the
/// standard library distributions are implementation-defined and would break
/// replay across toolchains. One stream drives an entire optimizer run.
class RngStream {
 public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on {0, ..., n-1}, n > 0.
    int uniform_int(int n) { return static_cast<int>(uniform() * static_cast<double>(n)); }

    /// Standard normal via Box-Muller; consumes exactly two uniform draws.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(2.0 * kPi * u2);
    }

 private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer: a 64-bit avalanche mixer (bijective).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace fics
