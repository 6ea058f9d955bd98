#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "emgswn/rng.hpp"
#include "emgswn/swn.hpp"

using namespace emgswn;

TEST_CASE("push_sample: fill, eviction, time index") {
    SlidingWindowBuffer buf(3);
    buf.push(1);
    buf.push(2);
    buf.push(3);
    CHECK(buf.window() == std::vector<double>{1, 2, 3});
    buf.push(4);
    CHECK(buf.window() == std::vector<double>{2, 3, 4});
    CHECK(buf.time_index() == 4);

    SlidingWindowBuffer partial(5);
    partial.push(1);
    partial.push(2);
    CHECK(partial.fill_count() == 2);
    CHECK_FALSE(partial.full());
}

TEST_CASE("swn_window matches the hand-computed z-scores") {
    SlidingWindowBuffer buf(3);
    buf.push(1);
    buf.push(2);
    buf.push(3);
    const NormalizedWindow w = buf.swn_window();
    CHECK(w.mean == doctest::Approx(2.0));
    CHECK(w.sigma == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(w.values[0] == doctest::Approx(-1.224744871391589).epsilon(1e-9));
    CHECK(w.values[1] == doctest::Approx(0.0));
    CHECK(w.values[2] == doctest::Approx(1.224744871391589).epsilon(1e-9));
}

TEST_CASE("constant window normalizes to zeros") {
    SlidingWindowBuffer buf(3);
    for (int i = 0; i < 3; ++i) buf.push(5.0);
    const NormalizedWindow w = buf.swn_window();
    for (double v : w.values) CHECK(v == 0.0);
}

TEST_CASE("affine invariance of the z-score") {
    SlidingWindowBuffer a(3), b(3);
    for (double v : {1.0, 2.0, 3.0}) {
        a.push(v);
        b.push(5.0 * v + 7.0);
    }
    const auto wa = a.swn_window();
    const auto wb = b.swn_window();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(wb.values[i] == doctest::Approx(wa.values[i]).epsilon(1e-9));
    }
}

TEST_CASE("warm-up incomplete raises") {
    SlidingWindowBuffer buf(4);
    buf.push(1);
    CHECK_THROWS_AS(buf.swn_window(), std::logic_error);
    CHECK_THROWS_AS(buf.passthrough_window(), std::logic_error);
}

TEST_CASE("passthrough returns raw values and still reports moments") {
    SlidingWindowBuffer buf(3);
    for (double v : {1.0, 2.0, 3.0}) buf.push(v);
    const NormalizedWindow w = buf.passthrough_window();
    CHECK(w.values == std::vector<double>{1, 2, 3});
    CHECK(w.sigma == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));

    SlidingWindowBuffer c(3);
    for (int i = 0; i < 3; ++i) c.push(4.0);
    CHECK(c.passthrough_window().mean == doctest::Approx(4.0));
}

TEST_CASE("property: random windows have zero mean and unit population std") {
    Rng rng(2024);
    for (int round = 0; round < 1000; ++round) {
        const std::size_t len = 50 + rng.uniform_int(201);
        SlidingWindowBuffer buf(len);
        for (std::size_t i = 0; i < len; ++i) buf.push(rng.normal() * 3.0 + 1.0);
        const NormalizedWindow w = buf.swn_window();
        double mean = 0.0;
        for (double v : w.values) mean += v;
        mean /= static_cast<double>(len);
        double var = 0.0;
        for (double v : w.values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(len);
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
    }
}

TEST_CASE("property: affine invariance on random windows") {
    Rng rng(99);
    for (int round = 0; round < 200; ++round) {
        const std::size_t len = 50 + rng.uniform_int(201);
        const double k = rng.uniform(0.1, 10.0);
        const double b = rng.uniform(-5.0, 5.0);
        SlidingWindowBuffer plain(len), scaled(len);
        for (std::size_t i = 0; i < len; ++i) {
            const double v = rng.normal();
            plain.push(v);
            scaled.push(k * v + b);
        }
        const auto wp = plain.swn_window();
        const auto ws = scaled.swn_window();
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(ws.values[i] == doctest::Approx(wp.values[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: streaming equals batch at every step") {
    Rng rng(512);
    const std::size_t len = 120;
    const std::size_t n = 4000;
    std::vector<double> signal(n);
    for (double& v : signal) v = rng.normal() * 0.3 + 0.05;

    SlidingWindowBuffer buf(len);
    for (std::size_t t = 0; t < n; ++t) {
        buf.push(signal[t]);
        if (t + 1 < len) continue;
        const NormalizedWindow streaming = buf.swn_window();
        const NormalizedWindow batch = normalize_window(
            std::span<const double>(signal).subspan(t + 1 - len, len));
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(std::abs(streaming.values[i] - batch.values[i]) <= 1e-12);
        }
    }
}

TEST_CASE("property: idempotence on already-normalized windows") {
    Rng rng(7);
    for (int round = 0; round < 100; ++round) {
        const std::size_t len = 50 + rng.uniform_int(201);
        std::vector<double> x(len);
        for (double& v : x) v = rng.normal() * 2.0 + 3.0;
        const NormalizedWindow once = normalize_window(x);
        const NormalizedWindow twice = normalize_window(once.values);
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(twice.values[i] == doctest::Approx(once.values[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("incremental stats agree with the reference recomputation") {
    Rng rng(31337);
    const std::size_t len = 250;
    IncrementalWindowStats inc(len);
    SlidingWindowBuffer ref(len);
    std::vector<double> out(len);
    for (std::size_t t = 0; t < 30000; ++t) {
        const double v = rng.normal() * 0.7 + 0.1;
        inc.push(v);
        ref.push(v);
        if (!inc.full() || t % 97 != 0) continue;
        const NormalizedWindow expected = ref.swn_window();
        CHECK(std::abs(inc.mean() - expected.mean) <= 1e-12);
        CHECK(std::abs(inc.sigma() - expected.sigma) <= 1e-12);
        inc.normalized_window_into(out);
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(std::abs(out[i] - expected.values[i]) <= 1e-12);
        }
        CHECK(std::abs(inc.newest_normalized() - expected.values.back()) <= 1e-12);
    }
}
