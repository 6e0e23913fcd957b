#pragma once

// Shared synthetic fixtures and independent oracles for the test suites. The
// oracles here recompute results from first principles and must stay
// independent of the library's evaluation paths.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ficsthresh/image.hpp"
#include "ficsthresh/objective.hpp"
#include "ficsthresh/rng.hpp"

namespace fixtures {

inline fics::Histogram from_counts(const std::vector<std::pair<int, std::int64_t>>& spikes) {
    fics::Histogram h;
    for (const auto& [level, count] : spikes) {
        h.counts[static_cast<std::size_t>(level)] += count;
        h.total += count;
    }
    return h;
}

inline fics::Histogram two_spike() { return from_counts({{0, 2}, {255, 2}}); }

inline fics::Histogram single_spike() { return from_counts({{100, 9}}); }

inline fics::Histogram uniform() {
    fics::Histogram h;
    h.counts.fill(1);
    h.total = 256;
    return h;
}

/// Gaussian-mixture histogram with integer bin counts summing to ~mass.
inline fics::Histogram gaussian_mixture(const std::vector<double>& modes,
                                        const std::vector<double>& sigmas,
                                        const std::vector<double>& weights,
                                        std::int64_t mass = 10000) {
    std::array<double, 256> density{};
    double sum = 0.0;
    for (int i = 0; i < 256; ++i) {
        double d = 0.0;
        for (std::size_t g = 0; g < modes.size(); ++g) {
            const double z = (i - modes[g]) / sigmas[g];
            d += weights[g] * std::exp(-0.5 * z * z);
        }
        density[static_cast<std::size_t>(i)] = d;
        sum += d;
    }
    fics::Histogram h;
    for (int i = 0; i < 256; ++i) {
        const auto c = static_cast<std::int64_t>(
            std::llround(static_cast<double>(mass) * density[static_cast<std::size_t>(i)] / sum));
        h.counts[static_cast<std::size_t>(i)] = c;
        h.total += c;
    }
    if (h.total == 0) {
        h.counts[0] = 1;
        h.total = 1;
    }
    return h;
}

inline fics::Histogram bimodal() { return gaussian_mixture({60, 190}, {15, 15}, {1, 1}); }

inline fics::Histogram trimodal() {
    return gaussian_mixture({50, 128, 200}, {12, 12, 12}, {1.0, 0.8, 1.1});
}

inline fics::Histogram five_mode() {
    return gaussian_mixture({25, 75, 125, 175, 225}, {10, 10, 10, 10, 10},
                            {1.0, 1.2, 0.9, 1.1, 1.0});
}

/// Random histogram: each bin uniform in [0, 40), re-rolled until nonempty.
inline fics::Histogram random_histogram(fics::RngStream& rng) {
    fics::Histogram h;
    while (h.total == 0) {
        h.total = 0;
        for (auto& c : h.counts) {
            c = rng.uniform_int(40);
            h.total += c;
        }
    }
    return h;
}

/// Deterministic pixel sequence whose histogram matches `h` (levels emitted
/// in order, then shuffled by the caller if needed).
inline fics::GrayImage image_from_histogram(const fics::Histogram& h, int width) {
    fics::GrayImage img;
    img.width = width;
    img.height = static_cast<int>((h.total + width - 1) / width);
    for (int level = 0; level < 256; ++level) {
        for (std::int64_t c = 0; c < h.counts[static_cast<std::size_t>(level)]; ++c) {
            img.pixels.push_back(static_cast<std::uint8_t>(level));
        }
    }
    // pad the last row with the first level that has mass
    while (img.pixels.size() < static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height)) {
        img.pixels.push_back(img.pixels.front());
    }
    return img;
}

// ---- independent oracles -------------------------------------------------

/// Between-class variance straight from the definition: per-class sums over
/// the raw histogram bins, no prefix sums.
inline double otsu_direct(const fics::Histogram& h, const std::vector<int>& thresholds) {
    const double total = static_cast<double>(h.total);
    double mu_t = 0.0;
    for (int i = 0; i < 256; ++i) mu_t += i * (static_cast<double>(h.counts[static_cast<std::size_t>(i)]) / total);
    std::vector<int> edges;
    edges.push_back(0);
    for (const int t : thresholds) edges.push_back(t);
    edges.push_back(256);
    double f = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        double omega = 0.0, moment = 0.0;
        for (int i = edges[k]; i < edges[k + 1]; ++i) {
            const double p = static_cast<double>(h.counts[static_cast<std::size_t>(i)]) / total;
            omega += p;
            moment += i * p;
        }
        if (omega > 0.0) {
            const double mu = moment / omega;
            f += omega * (mu - mu_t) * (mu - mu_t);
        }
    }
    return f;
}

/// Total variance of the gray-level distribution (upper bound for any
/// between-class variance).
inline double total_variance(const fics::Histogram& h) {
    const double total = static_cast<double>(h.total);
    double mu = 0.0;
    for (int i = 0; i < 256; ++i) mu += i * (static_cast<double>(h.counts[static_cast<std::size_t>(i)]) / total);
    double var = 0.0;
    for (int i = 0; i < 256; ++i) {
        var += (i - mu) * (i - mu) * (static_cast<double>(h.counts[static_cast<std::size_t>(i)]) / total);
    }
    return var;
}

/// Lanczos gamma approximation (g = 7, n = 9), independent of std::tgamma.
inline double lanczos_gamma(double x) {
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (x < 0.5) {
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    const double pi = 3.14159265358979323846;
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace fixtures
