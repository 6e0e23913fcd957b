#include "ficsthresh/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fics {

SampleSummary summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    SampleSummary s;
    s.n = static_cast<int>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(s.n);
    if (s.n > 1) {
        double sq = 0.0;
        for (const double v : samples) {
            const double d = v - s.mean;
            sq += d * d;
        }
        s.std = std::sqrt(sq / static_cast<double>(s.n - 1));
    }
    return s;
}

std::string_view verdict_symbol(Verdict v) {
    switch (v) {
        case Verdict::Plus: return "+";
        case Verdict::Equal: return "=";
        case Verdict::Minus: return "-";
    }
    return "?";
}

namespace {

// average ranks (1-based) of the pooled sample
std::vector<double> average_ranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

struct RankSetup {
    std::vector<double> ranks;  // pooled average ranks, a first then b
    double w = 0.0;             // rank sum of a
    std::size_t n1 = 0, n2 = 0;
};

RankSetup rank_setup(std::span<const double> a, std::span<const double> b) {
    RankSetup s;
    s.n1 = a.size();
    s.n2 = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    s.ranks = average_ranks(pooled);
    s.w = std::accumulate(s.ranks.begin(), s.ranks.begin() + static_cast<std::ptrdiff_t>(s.n1), 0.0);
    return s;
}

// counts assignments of n1 of the pooled ranks with sum <= / >= w
void count_extremes(const std::vector<double>& ranks, std::size_t pick, std::size_t from,
                    double partial, double w, long& le, long& ge, long& total) {
    if (pick == 0) {
        ++total;
        if (partial <= w + 1e-9) ++le;
        if (partial >= w - 1e-9) ++ge;
        return;
    }
    if (from + pick > ranks.size()) return;
    count_extremes(ranks, pick - 1, from + 1, partial + ranks[from], w, le, ge, total);
    count_extremes(ranks, pick, from + 1, partial, w, le, ge, total);
}

double median_of(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    return (n % 2 == 1) ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2.0;
}

void require_sizes(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 3 || b.size() < 3) {
        throw std::invalid_argument("wilcoxon_rank_sum needs at least 3 values per sample");
    }
}

}  // namespace

double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
    require_sizes(a, b);
    const RankSetup s = rank_setup(a, b);
    long le = 0, ge = 0, total = 0;
    count_extremes(s.ranks, s.n1, 0, 0.0, s.w, le, ge, total);
    const double p = 2.0 * std::min(static_cast<double>(le), static_cast<double>(ge)) /
                     static_cast<double>(total);
    return std::min(1.0, p);
}

double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b) {
    require_sizes(a, b);
    const RankSetup s = rank_setup(a, b);
    const double n1 = static_cast<double>(s.n1);
    const double n2 = static_cast<double>(s.n2);
    const double n = n1 + n2;
    const double mu = n1 * (n + 1.0) / 2.0;

    // tie correction over groups of equal pooled values
    std::vector<double> sorted_ranks = s.ranks;
    std::sort(sorted_ranks.begin(), sorted_ranks.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted_ranks.size()) {
        std::size_t j = i;
        while (j + 1 < sorted_ranks.size() && sorted_ranks[j + 1] == sorted_ranks[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0;  // every observation tied

    double z = s.w - mu;
    z -= 0.5 * (z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0));  // continuity correction
    z /= std::sqrt(var);
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

PairwiseVerdict wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                  double alpha, bool maximize) {
    require_sizes(a, b);
    PairwiseVerdict v;
    v.p_value = (a.size() + b.size() <= 12) ? wilcoxon_exact_p(a, b) : wilcoxon_normal_p(a, b);
    if (v.p_value < alpha) {
        double diff = median_of(a) - median_of(b);
        if (diff == 0.0) {
            const RankSetup s = rank_setup(a, b);
            diff = s.w - static_cast<double>(s.n1) * (static_cast<double>(s.n1 + s.n2) + 1.0) / 2.0;
        }
        const bool a_better = maximize ? diff > 0.0 : diff < 0.0;
        v.h = a_better ? Verdict::Plus : Verdict::Minus;
    }
    return v;
}

FriedmanResult friedman_mean_ranks(const std::vector<std::vector<double>>& table, bool maximize) {
    const std::size_t n = table.size();
    if (n < 2) throw std::invalid_argument("friedman needs at least 2 rows");
    const std::size_t k = table[0].size();
    if (k < 2) throw std::invalid_argument("friedman needs at least 2 columns");
    for (const auto& row : table) {
        if (row.size() != k) throw std::invalid_argument("ragged matrix");
    }
    FriedmanResult res;
    res.mean_ranks.assign(k, 0.0);
    for (const auto& row : table) {
        const std::vector<double> asc = average_ranks(row);  // 1 = smallest value
        for (std::size_t j = 0; j < k; ++j) {
            // with maximization the largest value earns rank k
            res.mean_ranks[j] += maximize ? asc[j] : (static_cast<double>(k) + 1.0 - asc[j]);
        }
    }
    for (double& r : res.mean_ranks) r /= static_cast<double>(n);
    const double kk = static_cast<double>(k);
    double sum_sq = 0.0;
    for (const double r : res.mean_ranks) sum_sq += r * r;
    res.chi_square = 12.0 * static_cast<double>(n) / (kk * (kk + 1.0)) *
                     (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
    return res;
}

}  // namespace fics
