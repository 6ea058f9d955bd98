#include <doctest.h>

#include <cmath>
#include <vector>

#include "emgswn/logistic.hpp"
#include "emgswn/rng.hpp"
#include "support/oracles.hpp"

using namespace emgswn;

namespace {

struct Blobs {
    std::vector<double> x;
    std::vector<TargetLabel> y;
    std::vector<int> y_int;
    std::size_t rows = 0;
};

// three 2-D Gaussian blobs, one per class
Blobs make_blobs(double sigma, double center_distance, std::size_t per_class,
                 std::uint64_t seed) {
    Blobs out;
    Rng rng(seed);
    const double cx[3] = {0.0, center_distance, 0.0};
    const double cy[3] = {0.0, 0.0, center_distance};
    const TargetLabel labels[3] = {TargetLabel::Rest, TargetLabel::Flexion,
                                   TargetLabel::Extension};
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            out.x.push_back(cx[c] + sigma * rng.normal());
            out.x.push_back(cy[c] + sigma * rng.normal());
            out.y.push_back(labels[c]);
            out.y_int.push_back(c);
            ++out.rows;
        }
    }
    return out;
}

} // namespace

TEST_CASE("well-separated blobs train to near-perfect accuracy") {
    const Blobs blobs = make_blobs(0.1, 5.0, 60, 1001);
    const double oracle = oracles::nearest_centroid_accuracy(blobs.x, blobs.rows, 2,
                                                             blobs.y_int, 3);
    REQUIRE(oracle >= 0.99); // the draw itself is separable
    const LogisticModel model = fit_logistic(blobs.x, blobs.rows, 2, blobs.y);
    const auto pred = predict(model, blobs.x, blobs.rows, 2);
    CHECK(accuracy(pred, blobs.y) >= 0.99);
}

TEST_CASE("equal class counts: balanced weights equal the unweighted fit") {
    const Blobs blobs = make_blobs(0.8, 3.0, 50, 1002);
    const LogisticModel balanced = fit_logistic(blobs.x, blobs.rows, 2, blobs.y);
    const LogisticModel unit = fit_logistic_weighted(blobs.x, blobs.rows, 2, blobs.y,
                                                     {1.0, 1.0, 1.0});
    REQUIRE(balanced.weights.size() == unit.weights.size());
    for (std::size_t i = 0; i < balanced.weights.size(); ++i) {
        CHECK(balanced.weights[i] == doctest::Approx(unit.weights[i]).epsilon(1e-6));
    }
}

TEST_CASE("all-zero features leave the balanced optimum at uniform, ties to class order") {
    std::vector<double> x(10, 0.0);
    std::vector<TargetLabel> y;
    for (int i = 0; i < 5; ++i) y.push_back(TargetLabel::Rest);
    for (int i = 0; i < 3; ++i) y.push_back(TargetLabel::Flexion);
    for (int i = 0; i < 2; ++i) y.push_back(TargetLabel::Extension);
    const LogisticModel model = fit_logistic(x, 10, 1, y);
    const auto pred = predict(model, x, 10, 1);
    for (TargetLabel p : pred) CHECK(p == TargetLabel::Rest);
    CHECK(accuracy(pred, y) == doctest::Approx(0.5));
}

TEST_CASE("training errors: single class, non-finite features") {
    std::vector<double> x = {1.0, 2.0, 3.0};
    std::vector<TargetLabel> y(3, TargetLabel::Rest);
    CHECK_THROWS_AS(fit_logistic(x, 3, 1, y), std::runtime_error);
    y[1] = TargetLabel::Flexion;
    x[2] = std::nan("");
    CHECK_THROWS_AS(fit_logistic(x, 3, 1, y), std::invalid_argument);
}

TEST_CASE("predict: zero weights give the first class; shape checks") {
    LogisticModel model;
    model.dim = 2;
    model.weights.assign(3 * 3, 0.0);
    const std::vector<double> x = {1.0, 2.0, -1.0, 0.5};
    const auto pred = predict(model, x, 2, 2);
    for (TargetLabel p : pred) CHECK(p == model.class_order[0]);

    const auto one = predict(model, std::vector<double>{4.0, 4.0}, 1, 2);
    CHECK(one.size() == 1);

    CHECK_THROWS_AS(predict(model, x, 1, 4), std::invalid_argument);
}

TEST_CASE("predict is invariant to shifting all class scores") {
    const Blobs blobs = make_blobs(0.5, 3.0, 40, 1003);
    LogisticModel model = fit_logistic(blobs.x, blobs.rows, 2, blobs.y);
    const auto before = predict(model, blobs.x, blobs.rows, 2);
    for (std::size_t j = 0; j < model.dim + 1; ++j) {
        for (std::size_t c = 0; c < 3; ++c) {
            model.weights[c * (model.dim + 1) + j] += (j == model.dim) ? 13.5 : -2.25;
        }
    }
    const auto after = predict(model, blobs.x, blobs.rows, 2);
    CHECK(before == after);
}

TEST_CASE("accuracy arithmetic and errors") {
    using L = TargetLabel;
    const std::vector<L> a = {L::Rest, L::Flexion, L::Rest, L::Extension};
    const std::vector<L> b = {L::Rest, L::Flexion, L::Rest, L::Flexion};
    CHECK(accuracy(b, a) == doctest::Approx(0.75));
    CHECK(accuracy(a, a) == doctest::Approx(1.0));
    CHECK_THROWS_AS(accuracy(std::vector<L>{}, std::vector<L>{}), std::invalid_argument);
    CHECK_THROWS_AS(accuracy(a, std::vector<L>{L::Rest}), std::invalid_argument);
}

TEST_CASE("random labels over three balanced classes sit at chance") {
    Rng rng(1004);
    const std::size_t n = 10000;
    std::vector<TargetLabel> a(n), b(n);
    const TargetLabel labels[3] = {TargetLabel::Rest, TargetLabel::Flexion,
                                   TargetLabel::Extension};
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = labels[rng.uniform_int(3)];
        b[i] = labels[rng.uniform_int(3)];
    }
    CHECK(accuracy(a, b) == doctest::Approx(1.0 / 3.0).epsilon(0.06));
}

TEST_CASE("row permutation does not move the optimum") {
    const Blobs blobs = make_blobs(0.9, 2.5, 60, 1005); // overlapping: finite optimum
    const LogisticModel base = fit_logistic(blobs.x, blobs.rows, 2, blobs.y);

    // rotate rows by 37
    std::vector<double> x2;
    std::vector<TargetLabel> y2;
    for (std::size_t i = 0; i < blobs.rows; ++i) {
        const std::size_t j = (i + 37) % blobs.rows;
        x2.push_back(blobs.x[j * 2]);
        x2.push_back(blobs.x[j * 2 + 1]);
        y2.push_back(blobs.y[j]);
    }
    const LogisticModel permuted = fit_logistic(x2, blobs.rows, 2, y2);
    for (std::size_t i = 0; i < base.weights.size(); ++i) {
        CHECK(std::abs(base.weights[i] - permuted.weights[i]) < 1e-6);
    }
}

TEST_CASE("model serialization round-trips") {
    const Blobs blobs = make_blobs(0.5, 3.0, 30, 1006);
    const LogisticModel model = fit_logistic(blobs.x, blobs.rows, 2, blobs.y);
    const LogisticModel restored = model_from_json(model_to_json(model));
    CHECK(restored.dim == model.dim);
    CHECK(restored.class_order == model.class_order);
    REQUIRE(restored.weights.size() == model.weights.size());
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        CHECK(restored.weights[i] == model.weights[i]);
    }
}
