#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ficsthresh/image.hpp"

namespace fics {

inline constexpr int kGrayLevels = 256;

/// Decoded solution: thresholds sorted non-decreasing, each in [1, 255].
/// Duplicates are allowed; the class they enclose is empty and scores zero.
using ThresholdVector = std::vector<int>;

/// Prefix sums over the normalized histogram, precomputed once per image so
/// that a single objective evaluation costs O(M).
///
/// cum_count[k]  = sum_{i<k} P_i       (so class probability over [a,b) is
/// cum_moment[k] = sum_{i<k} i * P_i    cum_count[b] - cum_count[a])
struct ObjectiveContext {
    std::vector<double> cum_count;   // size 257, cum_count[0] = 0, cum_count[256] = 1
    std::vector<double> cum_moment;  // size 257
    double total_mean = 0.0;
};

ObjectiveContext build_context(const Histogram& h);

/// Clamp each coordinate to [1, 255], round to the nearest integer (half away
/// from zero), sort non-decreasing. Throws std::invalid_argument on empty input.
ThresholdVector decode_position(std::span<const double> position);

/// Between-class variance of the pixel classes induced by `t`, with implicit
/// class edges 0 and 256. Empty classes contribute zero.
double otsu_value(const ObjectiveContext& ctx, const ThresholdVector& t);

/// Same evaluation over a raw sorted threshold buffer (no allocation).
double otsu_value(const ObjectiveContext& ctx, const int* thresholds, int m);

/// Global maximum of otsu_value over all strictly increasing integer vectors
/// in [1,255]^m; ties resolve to the lexicographically smallest vector.
/// Guarded to 1 <= m <= 3.
std::pair<ThresholdVector, double> exhaustive_search(const ObjectiveContext& ctx, int m);

}  // namespace fics
