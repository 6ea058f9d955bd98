#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emgswn/kinematics.hpp"

namespace emgswn {

/// Multinomial logistic regression over the three motion labels.
/// weights is 3 x (dim + 1), row-major, bias last in each row.
struct LogisticModel {
    std::array<TargetLabel, 3> class_order = {TargetLabel::Rest, TargetLabel::Flexion,
                                              TargetLabel::Extension};
    std::size_t dim = 0;
    std::vector<double> weights;
    int iterations = 0;
    double final_grad_norm = 0.0;

    std::size_t class_index(TargetLabel label) const;
};

struct FitOptions {
    int max_iter = 6000;
    double grad_tol = 1e-6; // infinity norm of the mean-NLL gradient
};

/// Unpenalized weighted maximum likelihood, balanced class weights
/// n_total / (K_present * n_c), zero-initialized L-BFGS on the mean
/// cross-entropy. Deterministic for a fixed row order.
LogisticModel fit_logistic(std::span<const double> x, std::size_t rows, std::size_t dim,
                           std::span<const TargetLabel> y, const FitOptions& options = {});

/// Same optimizer with explicit per-class weights (exposed for tests and
/// diagnostics).
LogisticModel fit_logistic_weighted(std::span<const double> x, std::size_t rows, std::size_t dim,
                                    std::span<const TargetLabel> y,
                                    const std::array<double, 3>& class_weights,
                                    const FitOptions& options = {});

/// Softmax argmax; ties resolve to the earliest class_order position.
std::vector<TargetLabel> predict(const LogisticModel& model, std::span<const double> x,
                                 std::size_t rows, std::size_t dim);

/// Fraction of matching labels; both series must be nonempty and equal length.
double accuracy(std::span<const TargetLabel> predicted, std::span<const TargetLabel> actual);

std::string model_to_json(const LogisticModel& model);
LogisticModel model_from_json(const std::string& text);

} // namespace emgswn
