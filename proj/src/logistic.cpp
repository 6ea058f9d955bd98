#include "emgswn/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include <json.hpp>

namespace emgswn {

namespace {

constexpr std::size_t kClasses = 3;

struct Problem {
    std::span<const double> x;
    std::size_t rows = 0;
    std::size_t dim = 0; // without bias
    std::vector<std::size_t> y_idx;
    std::vector<double> row_weight;
    double weight_sum = 0.0;

    std::size_t params() const { return kClasses * (dim + 1); }

    // mean weighted negative log-likelihood and its gradient
    double eval(const std::vector<double>& w, std::vector<double>& grad) const {
        const std::size_t d1 = dim + 1;
        std::fill(grad.begin(), grad.end(), 0.0);
        double nll = 0.0;
        double scores[kClasses];
        double probs[kClasses];
        for (std::size_t i = 0; i < rows; ++i) {
            const double* xi = x.data() + i * dim;
            for (std::size_t c = 0; c < kClasses; ++c) {
                const double* wc = w.data() + c * d1;
                double s = wc[dim]; // bias
                for (std::size_t j = 0; j < dim; ++j) s += wc[j] * xi[j];
                scores[c] = s;
            }
            const double mx = std::max({scores[0], scores[1], scores[2]});
            double z = 0.0;
            for (std::size_t c = 0; c < kClasses; ++c) {
                probs[c] = std::exp(scores[c] - mx);
                z += probs[c];
            }
            const double wi = row_weight[i];
            nll -= wi * (scores[y_idx[i]] - mx - std::log(z));
            for (std::size_t c = 0; c < kClasses; ++c) {
                const double r = wi * (probs[c] / z - (c == y_idx[i] ? 1.0 : 0.0));
                double* gc = grad.data() + c * d1;
                for (std::size_t j = 0; j < dim; ++j) gc[j] += r * xi[j];
                gc[dim] += r;
            }
        }
        const double inv = 1.0 / weight_sum;
        for (double& g : grad) g *= inv;
        return nll * inv;
    }
};

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Standard two-loop L-BFGS with Armijo backtracking. Zero init keeps the
// fit deterministic for a fixed row order.
LogisticModel lbfgs_fit(const Problem& prob, const FitOptions& options) {
    const std::size_t n = prob.params();
    std::vector<double> w(n, 0.0), grad(n), new_grad(n), direction(n), trial(n);
    double f = prob.eval(w, grad);

    constexpr std::size_t kHistory = 8;
    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    LogisticModel model;
    model.dim = prob.dim;

    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        if (inf_norm(grad) < options.grad_tol) break;

        // two-loop recursion
        direction = grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * dot(s_hist[k], direction);
            for (std::size_t i = 0; i < n; ++i) direction[i] -= alpha[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const double gamma =
                dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (double& d : direction) d *= gamma;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], direction);
            for (std::size_t i = 0; i < n; ++i) direction[i] += (alpha[k] - beta) * s_hist[k][i];
        }
        for (double& d : direction) d = -d;

        double gd = dot(grad, direction);
        if (gd >= 0.0) { // fall back to steepest descent
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
            gd = -dot(grad, grad);
        }

        double step = 1.0;
        double f_new = f;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = w[i] + step * direction[i];
            f_new = prob.eval(trial, new_grad);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * gd) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break; // no further progress at float resolution

        std::vector<double> s_vec(n), y_vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            s_vec[i] = trial[i] - w[i];
            y_vec[i] = new_grad[i] - grad[i];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kHistory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        w.swap(trial);
        grad.swap(new_grad);
        f = f_new;
    }

    model.weights = std::move(w);
    model.iterations = iter;
    model.final_grad_norm = inf_norm(grad);
    return model;
}

Problem build_problem(std::span<const double> x, std::size_t rows, std::size_t dim,
                      std::span<const TargetLabel> y, const std::array<double, 3>& class_weights,
                      const LogisticModel& ref) {
    if (rows == 0 || dim == 0) {
        throw std::invalid_argument("fit_logistic: empty training set");
    }
    if (x.size() != rows * dim || y.size() != rows) {
        throw std::invalid_argument("fit_logistic: feature/label shape mismatch");
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("fit_logistic: non-finite feature value");
        }
    }
    Problem prob;
    prob.x = x;
    prob.rows = rows;
    prob.dim = dim;
    prob.y_idx.resize(rows);
    prob.row_weight.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t c = ref.class_index(y[i]);
        prob.y_idx[i] = c;
        prob.row_weight[i] = class_weights[c];
        prob.weight_sum += class_weights[c];
    }
    if (prob.weight_sum <= 0.0) {
        throw std::runtime_error("fit_logistic: all rows have zero weight");
    }
    return prob;
}

} // namespace

std::size_t LogisticModel::class_index(TargetLabel label) const {
    for (std::size_t c = 0; c < class_order.size(); ++c) {
        if (class_order[c] == label) return c;
    }
    throw std::invalid_argument("LogisticModel: label not in class order");
}

LogisticModel fit_logistic_weighted(std::span<const double> x, std::size_t rows, std::size_t dim,
                                    std::span<const TargetLabel> y,
                                    const std::array<double, 3>& class_weights,
                                    const FitOptions& options) {
    LogisticModel ref;
    Problem prob = build_problem(x, rows, dim, y, class_weights, ref);
    LogisticModel model = lbfgs_fit(prob, options);
    model.class_order = ref.class_order;
    return model;
}

LogisticModel fit_logistic(std::span<const double> x, std::size_t rows, std::size_t dim,
                           std::span<const TargetLabel> y, const FitOptions& options) {
    LogisticModel ref;
    std::array<std::size_t, 3> counts{0, 0, 0};
    for (TargetLabel label : y) counts[ref.class_index(label)]++;
    std::size_t present = 0;
    for (std::size_t c : counts) present += (c > 0) ? 1 : 0;
    if (present < 2) {
        throw std::runtime_error("fit_logistic: need at least two distinct classes");
    }
    std::array<double, 3> weights{0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < 3; ++c) {
        if (counts[c] > 0) {
            weights[c] = static_cast<double>(rows) /
                         (static_cast<double>(present) * static_cast<double>(counts[c]));
        }
    }
    return fit_logistic_weighted(x, rows, dim, y, weights, options);
}

std::vector<TargetLabel> predict(const LogisticModel& model, std::span<const double> x,
                                 std::size_t rows, std::size_t dim) {
    if (dim != model.dim) {
        throw std::invalid_argument("predict: feature dimension does not match model");
    }
    if (x.size() != rows * dim) {
        throw std::invalid_argument("predict: feature buffer shape mismatch");
    }
    const std::size_t d1 = dim + 1;
    std::vector<TargetLabel> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* xi = x.data() + i * dim;
        std::size_t best = 0;
        double best_score = 0.0;
        for (std::size_t c = 0; c < kClasses; ++c) {
            const double* wc = model.weights.data() + c * d1;
            double s = wc[dim];
            for (std::size_t j = 0; j < dim; ++j) s += wc[j] * xi[j];
            if (c == 0 || s > best_score) {
                best = c;
                best_score = s;
            }
        }
        out.push_back(model.class_order[best]);
    }
    return out;
}

double accuracy(std::span<const TargetLabel> predicted, std::span<const TargetLabel> actual) {
    if (predicted.empty() || predicted.size() != actual.size()) {
        throw std::invalid_argument("accuracy: label series must be nonempty and equal length");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == actual[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

std::string model_to_json(const LogisticModel& model) {
    nlohmann::ordered_json j;
    j["class_order"] = {label_name(model.class_order[0]), label_name(model.class_order[1]),
                        label_name(model.class_order[2])};
    j["dim"] = model.dim;
    j["weights"] = model.weights;
    j["iterations"] = model.iterations;
    j["final_grad_norm"] = model.final_grad_norm;
    return j.dump(2);
}

LogisticModel model_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    LogisticModel model;
    const auto order = j.at("class_order").get<std::vector<std::string>>();
    if (order.size() != 3) {
        throw std::invalid_argument("model_from_json: class_order must have 3 labels");
    }
    for (std::size_t c = 0; c < 3; ++c) model.class_order[c] = label_from_name(order[c]);
    model.dim = j.at("dim").get<std::size_t>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.iterations = j.value("iterations", 0);
    model.final_grad_norm = j.value("final_grad_norm", 0.0);
    if (model.weights.size() != 3 * (model.dim + 1)) {
        throw std::invalid_argument("model_from_json: weight count does not match dimension");
    }
    return model;
}

} // namespace emgswn
