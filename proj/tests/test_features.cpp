#include <doctest.h>

#include <cmath>
#include <vector>

#include "emgswn/features.hpp"
#include "emgswn/rng.hpp"
#include "emgswn/swn.hpp"
#include "support/oracles.hpp"

using namespace emgswn;

TEST_CASE("mav hand values") {
    CHECK(mav(std::vector<double>{1, -1, 2, -2}) == doctest::Approx(1.5));
    CHECK(mav(std::vector<double>(16, 0.0)) == 0.0);
    CHECK(mav(std::vector<double>{3}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(mav(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("mwl hand values") {
    CHECK(mwl(std::vector<double>{0, 1, 3}) == doctest::Approx(1.5));
    CHECK(mwl(std::vector<double>(10, 4.2)) == 0.0);
    CHECK(mwl(std::vector<double>{0, 2}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(mwl(std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("drms hand values") {
    CHECK(drms(std::vector<double>{0, 1, 3}) == doctest::Approx(std::sqrt(2.5)));
    CHECK(drms(std::vector<double>(10, 4.2)) == 0.0);
    std::vector<double> alt(20);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(drms(alt) == doctest::Approx(2.0));
    CHECK_THROWS_AS(drms(std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("time-domain features: nonnegative, zero only when flat, power-mean order") {
    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        std::vector<double> x(30 + rng.uniform_int(100));
        for (double& v : x) v = rng.normal();
        CHECK(mav(x) >= 0.0);
        CHECK(mwl(x) >= 0.0);
        CHECK(drms(x) >= 0.0);
        // quadratic mean of |diffs| >= arithmetic mean of |diffs|
        CHECK(drms(x) >= mwl(x) - 1e-12);
    }
}

TEST_CASE("scale equivariance and SWN gain invariance") {
    Rng rng(6);
    std::vector<double> x(200);
    for (double& v : x) v = rng.normal();
    const double k = 3.7;
    std::vector<double> kx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) kx[i] = k * x[i];

    CHECK(mav(kx) == doctest::Approx(k * mav(x)).epsilon(1e-12));
    CHECK(mwl(kx) == doctest::Approx(k * mwl(x)).epsilon(1e-12));
    CHECK(drms(kx) == doctest::Approx(k * drms(x)).epsilon(1e-12));

    const auto nx = normalize_window(x).values;
    const auto nkx = normalize_window(kx).values;
    CHECK(mav(nkx) == doctest::Approx(mav(nx)).epsilon(1e-9));
    CHECK(mwl(nkx) == doctest::Approx(mwl(nx)).epsilon(1e-9));
    CHECK(drms(nkx) == doctest::Approx(drms(nx)).epsilon(1e-9));
}

TEST_CASE("stft bands: tone at 50 Hz lands in the low band") {
    const double fs = 500.0;
    std::vector<double> x(500);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::sin(2.0 * oracles::kPi * 50.0 * static_cast<double>(i) / fs);
    }
    const BandTriple bands = stft_bands(x, fs);
    CHECK(bands.low > 5.0 * bands.hig);

    const auto ref = oracles::stft_band_oracle(x, fs);
    CHECK(bands.low == doctest::Approx(ref.low).epsilon(1e-9));
    CHECK(bands.mid == doctest::Approx(ref.mid).epsilon(1e-9));
    CHECK(bands.hig == doctest::Approx(ref.hig).epsilon(1e-9));
}

TEST_CASE("stft bands: tone concentration at each band center") {
    const double fs = 500.0;
    struct Case {
        double tone;
        int band; // 0 low, 1 mid, 2 hig
    };
    for (const Case c : {Case{35.0, 0}, Case{80.0, 1}, Case{175.0, 2}}) {
        std::vector<double> x(500);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::sin(2.0 * oracles::kPi * c.tone * static_cast<double>(i) / fs);
        }
        const BandTriple bands = stft_bands(x, fs);
        const double v[3] = {bands.low, bands.mid, bands.hig};
        for (int other = 0; other < 3; ++other) {
            if (other == c.band) continue;
            CHECK(v[c.band] > 5.0 * v[other]);
        }
    }
}

TEST_CASE("stft bands: zeros map to zeros, short windows throw") {
    const BandTriple bands = stft_bands(std::vector<double>(128, 0.0), 500.0);
    CHECK(bands.low == 0.0);
    CHECK(bands.mid == 0.0);
    CHECK(bands.hig == 0.0);
    CHECK_THROWS_AS(stft_bands(std::vector<double>(63, 1.0), 500.0), std::invalid_argument);
}

TEST_CASE("fft agrees with the direct DFT") {
    Rng rng(17);
    std::vector<double> x(64);
    for (double& v : x) v = rng.normal();
    std::vector<std::complex<double>> a(64);
    for (std::size_t i = 0; i < 64; ++i) a[i] = x[i];
    fft_radix2(a);
    for (std::size_t k = 0; k < 33; ++k) {
        CHECK(std::abs(a[k]) == doctest::Approx(oracles::dft_bin_magnitude(x, k)).epsilon(1e-9));
    }
}

TEST_CASE("swt cd3: constants and linear ramps vanish") {
    CHECK(swt_cd3(std::vector<double>(64, 2.5)) == doctest::Approx(0.0).epsilon(1e-9));
    std::vector<double> ramp(64);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.25 * static_cast<double>(i) - 3.0;
    CHECK(swt_cd3(ramp) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("swt cd3: centered impulse equals the combined-filter tap mass") {
    std::vector<double> x(64, 0.0);
    x[32] = 1.0;
    const auto taps = oracles::atrous_level3_detail_taps();
    double tap_mass = 0.0;
    for (double t : taps) tap_mass += std::abs(t);
    CHECK(swt_cd3(x) == doctest::Approx(tap_mass / 64.0).epsilon(1e-9));
}

TEST_CASE("swt cd3 matches the single-convolution reference on random windows") {
    Rng rng(123);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> x(64);
        for (double& v : x) v = rng.normal();
        const auto got = swt_cd3_sequence(x);
        const auto ref = oracles::swt_cd3_oracle(x);
        REQUIRE(got.size() == ref.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(swt_cd3(std::vector<double>(7, 1.0)), std::invalid_argument);
}
