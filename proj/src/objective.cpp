#include "ficsthresh/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fics {

ObjectiveContext build_context(const Histogram& h) {
    if (h.total <= 0) throw std::invalid_argument("histogram total must be positive");
    ObjectiveContext ctx;
    ctx.cum_count.assign(kGrayLevels + 1, 0.0);
    ctx.cum_moment.assign(kGrayLevels + 1, 0.0);
    const double total = static_cast<double>(h.total);
    for (int i = 0; i < kGrayLevels; ++i) {
        const double p = static_cast<double>(h.counts[i]) / total;
        ctx.cum_count[i + 1] = ctx.cum_count[i] + p;
        ctx.cum_moment[i + 1] = ctx.cum_moment[i] + static_cast<double>(i) * p;
    }
    ctx.total_mean = ctx.cum_moment[kGrayLevels];
    return ctx;
}

ThresholdVector decode_position(std::span<const double> position) {
    if (position.empty()) throw std::invalid_argument("decode_position: empty position");
    ThresholdVector t(position.size());
    for (std::size_t i = 0; i < position.size(); ++i) {
        const double clamped = std::clamp(position[i], 1.0, 255.0);
        t[i] = static_cast<int>(std::round(clamped));  // half away from zero
    }
    std::sort(t.begin(), t.end());
    return t;
}

double otsu_value(const ObjectiveContext& ctx, const int* thresholds, int m) {
    double f = 0.0;
    int lower = 0;
    for (int k = 0; k <= m; ++k) {
        const int upper = (k < m) ? thresholds[k] : kGrayLevels;
        const double omega = ctx.cum_count[upper] - ctx.cum_count[lower];
        if (omega > 0.0) {
            const double mu = (ctx.cum_moment[upper] - ctx.cum_moment[lower]) / omega;
            const double d = mu - ctx.total_mean;
            f += omega * d * d;
        }
        lower = upper;
    }
    return f;
}

double otsu_value(const ObjectiveContext& ctx, const ThresholdVector& t) {
    return otsu_value(ctx, t.data(), static_cast<int>(t.size()));
}

std::pair<ThresholdVector, double> exhaustive_search(const ObjectiveContext& ctx, int m) {
    if (m < 1 || m > 3) {
        throw std::invalid_argument("exhaustive_search supports 1 <= m <= 3, got " + std::to_string(m));
    }
    int t[3] = {0, 0, 0};
    int best_t[3] = {0, 0, 0};
    double best_value = -1.0;
    // lexicographic iteration + strict improvement = lexicographically
    // smallest argmax
    auto consider = [&] {
        const double v = otsu_value(ctx, t, m);
        if (v > best_value) {
            best_value = v;
            std::copy(t, t + m, best_t);
        }
    };
    if (m == 1) {
        for (t[0] = 1; t[0] <= 255; ++t[0]) consider();
    } else if (m == 2) {
        for (t[0] = 1; t[0] <= 254; ++t[0])
            for (t[1] = t[0] + 1; t[1] <= 255; ++t[1]) consider();
    } else {
        for (t[0] = 1; t[0] <= 253; ++t[0])
            for (t[1] = t[0] + 1; t[1] <= 254; ++t[1])
                for (t[2] = t[1] + 1; t[2] <= 255; ++t[2]) consider();
    }
    return {ThresholdVector(best_t, best_t + m), best_value};
}

}  // namespace fics
