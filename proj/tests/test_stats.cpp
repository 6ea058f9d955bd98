#include <doctest.h>

#include <cmath>
#include <vector>

#include "emgswn/rng.hpp"
#include "emgswn/stats.hpp"
#include "support/oracles.hpp"

using namespace emgswn;

TEST_CASE("rank-sum exact: fully separated triplets give p = 0.1") {
    const std::vector<double> a = {1, 2, 3};
    const std::vector<double> b = {4, 5, 6};
    const StatTestResult r = wilcoxon_rank_sum(a, b);
    CHECK(r.exact);
    CHECK(r.statistic == doctest::Approx(6.0));
    CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("rank-sum: identical samples are not significant") {
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) a[i] = b[i] = 1.0 + 0.5 * i;
    const StatTestResult r = wilcoxon_rank_sum(a, b);
    CHECK(r.p_value >= 0.9);
}

TEST_CASE("rank-sum: large shift is highly significant") {
    Rng rng(88);
    std::vector<double> a(20), b(20);
    for (int i = 0; i < 20; ++i) {
        b[i] = rng.normal();
        a[i] = b[i] + 100.0;
    }
    const StatTestResult r = wilcoxon_rank_sum(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p_value < 0.001);
}

TEST_CASE("rank-sum exact path agrees with brute-force enumeration") {
    Rng rng(4242);
    for (std::size_t na = 1; na <= 6; ++na) {
        for (std::size_t nb = 1; nb <= 6; ++nb) {
            std::vector<double> a(na), b(nb);
            for (double& v : a) v = rng.normal();
            for (double& v : b) v = rng.normal();
            const StatTestResult r = wilcoxon_rank_sum(a, b);
            REQUIRE(r.exact);
            const double ref = oracles::ranksum_exact_bruteforce(na, nb, r.statistic);
            CHECK(r.p_value == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact path stays within 0.02 of the normal approximation for n = 6 + 6") {
    Rng rng(777);
    for (int round = 0; round < 50; ++round) {
        std::vector<double> a(6), b(6);
        for (double& v : a) v = rng.normal();
        for (double& v : b) v = rng.normal() + 0.3;
        const StatTestResult exact = wilcoxon_rank_sum(a, b);
        REQUIRE(exact.exact);

        // continuity-corrected normal approximation on the same rank sum
        const double mu = 6.0 * 13.0 / 2.0;
        const double sd = std::sqrt(6.0 * 6.0 * 13.0 / 12.0);
        const double z = std::max(0.0, std::abs(exact.statistic - mu) - 0.5) / sd;
        const double approx_p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
        CHECK(std::abs(exact.p_value - approx_p) < 0.02);
    }
}

TEST_CASE("bonferroni correction and stars") {
    CHECK(bonferroni({0.01, 0.02}, 2) == std::vector<double>{0.02, 0.04});
    CHECK(bonferroni({0.9}, 5) == std::vector<double>{1.0});
    const auto corrected = bonferroni({0.0004}, 5);
    CHECK(corrected[0] == doctest::Approx(0.002));
    CHECK(significance_stars(corrected[0]) == "**");

    CHECK(significance_stars(0.2) == "ns");
    CHECK(significance_stars(0.049) == "*");
    CHECK(significance_stars(0.0099) == "**");
    CHECK(significance_stars(0.00099) == "***");

    CHECK_THROWS_AS(bonferroni({0.5}, 0), std::invalid_argument);
    CHECK_THROWS_AS(bonferroni({0.5, 0.5}, 1), std::invalid_argument);
}

TEST_CASE("apply_bonferroni stamps corrected values and stars in place") {
    std::vector<StatTestResult> results(2);
    results[0].p_value = 0.004;
    results[1].p_value = 0.04;
    apply_bonferroni(results, 4);
    CHECK(results[0].corrected_p == doctest::Approx(0.016));
    CHECK(results[0].stars == "*");
    CHECK(results[1].corrected_p == doctest::Approx(0.16));
    CHECK(results[1].stars == "ns");
}

TEST_CASE("pearson correlation basics") {
    std::vector<double> x(50), y_pos(50), y_neg(50);
    Rng rng(31);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.normal();
        y_pos[i] = 2.0 * x[i] + 0.01 * rng.normal();
        y_neg[i] = -x[i];
    }
    CHECK(pearson(x, y_pos) > 0.99);
    CHECK(pearson(x, y_neg) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::isnan(pearson(x, std::vector<double>(50, 3.0))));
}

TEST_CASE("mean and sample sd") {
    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
    CHECK(mean_of(v) == doctest::Approx(2.5));
    CHECK(sample_sd(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
}
