#include "emgswn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace emgswn {

namespace {

constexpr std::size_t kExactLimit = 12;

std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[idx[j + 1]] == pooled[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

// counts size-k subsets of {1..n} whose sum deviates from the null mean by
// at least `threshold`
void count_extreme(std::size_t next, std::size_t remaining, double sum, std::size_t n,
                   double mu, double threshold, std::size_t& extreme, std::size_t& total) {
    if (remaining == 0) {
        ++total;
        if (std::abs(sum - mu) >= threshold - 1e-12) ++extreme;
        return;
    }
    if (next > n || n - next + 1 < remaining) return;
    count_extreme(next + 1, remaining - 1, sum + static_cast<double>(next), n, mu, threshold,
                  extreme, total);
    count_extreme(next + 1, remaining, sum, n, mu, threshold, extreme, total);
}

} // namespace

StatTestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("wilcoxon_rank_sum: both samples must be nonempty");
    }
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double w = 0.0;
    for (std::size_t i = 0; i < na; ++i) w += ranks[i];

    bool has_ties = false;
    {
        std::vector<double> sorted(pooled);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < n; ++i) {
            if (sorted[i] == sorted[i - 1]) {
                has_ties = true;
                break;
            }
        }
    }

    const double mu = static_cast<double>(na) * static_cast<double>(n + 1) / 2.0;

    StatTestResult out;
    out.statistic = w;

    if (n <= kExactLimit && !has_ties) {
        std::size_t extreme = 0, total = 0;
        count_extreme(1, na, 0.0, n, mu, std::abs(w - mu), extreme, total);
        out.p_value = static_cast<double>(extreme) / static_cast<double>(total);
        out.exact = true;
    } else {
        // tie-corrected variance
        double tie_term = 0.0;
        {
            std::vector<double> sorted(pooled);
            std::sort(sorted.begin(), sorted.end());
            std::size_t i = 0;
            while (i < n) {
                std::size_t j = i;
                while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
                const double t = static_cast<double>(j - i + 1);
                tie_term += t * t * t - t;
                i = j + 1;
            }
        }
        const double var =
            (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
            (static_cast<double>(n + 1) -
             tie_term / (static_cast<double>(n) * static_cast<double>(n - 1)));
        if (var <= 0.0) {
            out.p_value = 1.0; // fully tied pooled sample carries no ordering
        } else {
            const double num = std::max(0.0, std::abs(w - mu) - 0.5); // continuity correction
            const double z = num / std::sqrt(var);
            out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
        }
    }
    out.corrected_p = out.p_value;
    out.stars = significance_stars(out.p_value);
    return out;
}

std::vector<double> bonferroni(const std::vector<double>& p_values, int m) {
    if (m < 1) {
        throw std::invalid_argument("bonferroni: m must be >= 1");
    }
    if (static_cast<std::size_t>(m) < p_values.size()) {
        throw std::invalid_argument("bonferroni: m must cover all comparisons");
    }
    std::vector<double> out;
    out.reserve(p_values.size());
    for (double p : p_values) out.push_back(std::min(1.0, p * static_cast<double>(m)));
    return out;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "ns";
}

void apply_bonferroni(std::vector<StatTestResult>& results, int m) {
    std::vector<double> ps;
    ps.reserve(results.size());
    for (const auto& r : results) ps.push_back(r.p_value);
    const std::vector<double> corrected = bonferroni(ps, m);
    for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].corrected_p = corrected[i];
        results[i].stars = significance_stars(corrected[i]);
    }
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson: series must be equal length, >= 2");
    }
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const double eps = 1e-20 * static_cast<double>(x.size());
    if (sxx < eps || syy < eps) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sxy / std::sqrt(sxx * syy);
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) {
        const double d = x - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace emgswn
