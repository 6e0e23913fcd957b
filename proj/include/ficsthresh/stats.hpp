#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fics {

struct SampleSummary {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (divisor n-1), 0 when n == 1
    int n = 0;
};

SampleSummary summarize(std::span<const double> samples);

enum class Verdict { Plus, Equal, Minus };

std::string_view verdict_symbol(Verdict v);  // "+", "=", "-"

struct PairwiseVerdict {
    Verdict h = Verdict::Equal;
    double p_value = 1.0;
};

/// Exact two-sided rank-sum p-value by enumeration of every assignment of the
/// pooled (average-tie) ranks to the first sample. Intended for small samples.
double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b);

/// Normal-approximation two-sided p-value with tie and continuity corrections.
double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b);

/// Two-sided Wilcoxon rank-sum test of control sample `a` against `b`:
/// exact enumeration when |a|+|b| <= 12, normal approximation otherwise.
/// h is "+" when significant at `alpha` with `a` on the better side under the
/// given optimization direction, "-" when significant the other way, "=" else.
/// Requires |a| >= 3 and |b| >= 3.
PairwiseVerdict wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                  double alpha, bool maximize);

struct FriedmanResult {
    std::vector<double> mean_ranks;  // one per column, higher = better
    double chi_square = 0.0;
};

/// Friedman mean ranks over an n-rows (problems) by k-columns (algorithms)
/// table. Per row the best value gets rank k down to 1, ties averaged.
/// Requires n >= 2, k >= 2, rectangular input.
FriedmanResult friedman_mean_ranks(const std::vector<std::vector<double>>& table,
                                   bool maximize);

}  // namespace fics
