#include <doctest.h>

#include <cmath>
#include <vector>

#include "emgswn/errors.hpp"
#include "emgswn/pipeline.hpp"
#include "emgswn/rng.hpp"

using namespace emgswn;

namespace {

MultiChannelSignal noise_signal(std::size_t channels, std::size_t samples, double rate,
                                std::uint64_t seed) {
    MultiChannelSignal s;
    s.sample_rate_hz = rate;
    Rng rng(seed);
    for (std::size_t c = 0; c < channels; ++c) {
        std::vector<double> ch(samples);
        for (double& v : ch) v = rng.normal();
        s.channels.push_back(std::move(ch));
    }
    return s;
}

} // namespace

TEST_CASE("feature timeline: 10 s with 500 ms windows gives 190 rows") {
    const auto signal = noise_signal(1, 5000, 500.0, 42);
    FeatureConfig config;
    config.l_norm_ms = 500;
    config.l_feature_ms = 500;
    const FeatureStream out = feature_stream(signal, config);
    CHECK(out.features.rows == 190);
    CHECK(out.source_index.front() == 250);
    CHECK(out.source_index[1] == 275);
    CHECK(out.features.rate_hz == doctest::Approx(20.0));
}

TEST_CASE("feature dimension: plain MAV on 12 channels is 12") {
    const auto signal = noise_signal(12, 1000, 500.0, 43);
    FeatureConfig config;
    const FeatureStream out = feature_stream(signal, config);
    CHECK(out.features.cols == 12);
    CHECK(out.features.layout.size() == 12);
    CHECK(out.features.layout[0] == "ch01.mav");
}

TEST_CASE("feature dimension: STFT x UpDownLinear x ED2 on 12 channels is 144") {
    FeatureConfig config;
    config.feature = FeatureKind::Stft;
    config.weighting = WeightingWindowKind::UpDownLinear;
    config.dividing = {DividingKind::Equal, 2};
    const auto layout = feature_layout(config, 12);
    CHECK(layout.size() == 144); // 12 ch x 2 blocks x 2 members x 3 bands

    const auto signal = noise_signal(12, 2000, 500.0, 44);
    const FeatureStream out = feature_stream(signal, config);
    CHECK(out.features.cols == 144);
    CHECK(out.features.rows > 0);
}

TEST_CASE("None normalization ignores the normalization window entirely") {
    const auto signal = noise_signal(2, 3000, 500.0, 45);
    FeatureConfig a;
    a.normalization = Normalization::None;
    a.l_norm_ms = 100;
    a.l_feature_ms = 300;
    FeatureConfig b = a;
    b.l_norm_ms = 500;
    const FeatureStream fa = feature_stream(signal, a);
    const FeatureStream fb = feature_stream(signal, b);
    REQUIRE(fa.features.rows == fb.features.rows);
    for (std::size_t i = 0; i < fa.features.data.size(); ++i) {
        CHECK(fa.features.data[i] == fb.features.data[i]);
    }
}

TEST_CASE("SWN output is invariant to channel gain") {
    const auto signal = noise_signal(1, 2000, 500.0, 46);
    MultiChannelSignal scaled = signal;
    for (double& v : scaled.channels[0]) v *= 37.5;

    FeatureConfig config;
    config.l_norm_ms = 200;
    config.l_feature_ms = 200;
    const FeatureStream fa = feature_stream(signal, config);
    const FeatureStream fb = feature_stream(scaled, config);
    for (std::size_t i = 0; i < fa.features.data.size(); ++i) {
        CHECK(fb.features.data[i] == doctest::Approx(fa.features.data[i]).epsilon(1e-9));
    }
}

TEST_CASE("window sigma side data tracks the raw window std") {
    const auto signal = noise_signal(1, 2000, 500.0, 47);
    FeatureConfig config;
    config.l_norm_ms = 100;
    config.l_feature_ms = 100;
    const FeatureStream out = feature_stream(signal, config);
    REQUIRE(out.window_sigma.size() == out.features.rows);
    for (const auto& row : out.window_sigma) {
        REQUIRE(row.size() == 1);
        CHECK(std::isfinite(row[0]));
        CHECK(row[0] > 0.0);
    }
}

TEST_CASE("invalid configurations are rejected") {
    FeatureConfig bad_window;
    bad_window.l_feature_ms = 250;
    CHECK_THROWS_AS(bad_window.validate(), ConfigError);

    FeatureConfig stft_small;
    stft_small.feature = FeatureKind::Stft;
    stft_small.l_feature_ms = 100; // 50 samples, below one segment
    CHECK_THROWS_AS(stft_small.validate(), ConfigError);

    FeatureConfig stft_divided;
    stft_divided.feature = FeatureKind::Stft;
    stft_divided.l_feature_ms = 200;
    stft_divided.dividing = {DividingKind::Equal, 2}; // 100 ms blocks, not over 100 ms
    CHECK_THROWS_AS(stft_divided.validate(), ConfigError);
    CHECK_FALSE(dividing_supports_feature(stft_divided, 500.0));

    FeatureConfig stft_od2;
    stft_od2.feature = FeatureKind::Stft;
    stft_od2.l_feature_ms = 200;
    stft_od2.dividing = {DividingKind::Overlap, 2}; // 66 samples = 132 ms, fine
    CHECK_NOTHROW(stft_od2.validate());

    const auto signal = noise_signal(1, 1000, 250.0, 48);
    FeatureConfig config;
    CHECK_THROWS_AS(feature_stream(signal, config), std::invalid_argument);
}

TEST_CASE("preprocessing chain: 2000 Hz in, 500 Hz out, DC removed") {
    auto raw = noise_signal(2, 9200, 2000.0, 49);
    for (auto& ch : raw.channels) {
        for (double& v : ch) v += 5.0; // large offset the 30 Hz highpass must remove
    }
    const MultiChannelSignal prep = preprocess_emg(raw);
    CHECK(prep.sample_rate_hz == doctest::Approx(500.0));
    CHECK(prep.length() == 2300);
    double tail_mean = 0.0;
    for (std::size_t i = 1300; i < 2300; ++i) tail_mean += prep.channels[0][i];
    tail_mean /= 1000.0;
    CHECK(std::abs(tail_mean) < 0.05);

    const auto wrong = noise_signal(1, 100, 500.0, 50);
    CHECK_THROWS_AS(preprocess_emg(wrong), std::invalid_argument);
}
