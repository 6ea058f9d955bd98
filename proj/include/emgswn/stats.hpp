#pragma once

#include <span>
#include <string>
#include <vector>

namespace emgswn {

/// Two-sample test outcome. corrected_p and stars are filled in once the
/// comparison family is known (apply_bonferroni).
struct StatTestResult {
    double statistic = 0.0; // rank sum of the first sample (midranks)
    double p_value = 1.0;
    double corrected_p = 1.0;
    std::string stars = "ns";
    bool exact = false;
};

/// Two-sided Wilcoxon rank-sum test. Exact null enumeration when
/// n_a + n_b <= 12 and the pooled sample has no ties; otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
StatTestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// min(1, p * m) per value. Requires m >= max(1, count).
std::vector<double> bonferroni(const std::vector<double>& p_values, int m);

/// "***" below 0.001, "**" below 0.01, "*" below 0.05, else "ns".
std::string significance_stars(double p);

/// Applies the shared-family correction and star rendering in place.
void apply_bonferroni(std::vector<StatTestResult>& results, int m);

/// Pearson correlation; NaN when either side has (near) zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

double mean_of(std::span<const double> v);
double sample_sd(std::span<const double> v); // divide by n-1

} // namespace emgswn
