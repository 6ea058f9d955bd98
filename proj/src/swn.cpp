#include "emgswn/swn.hpp"

#include <cmath>
#include <stdexcept>

namespace emgswn {

void window_moments(std::span<const double> window, double& mean, double& sigma) {
    const std::size_t n = window.size();
    double sum = 0.0;
    for (double v : window) sum += v;
    mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : window) {
        const double d = v - mean;
        ss += d * d;
    }
    sigma = std::sqrt(ss / static_cast<double>(n));
}

NormalizedWindow normalize_window(std::span<const double> window) {
    NormalizedWindow out;
    window_moments(window, out.mean, out.sigma);
    out.values.resize(window.size());
    if (out.sigma < kDegenerateSigma) {
        // constant window carries no motion information
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    const double inv = 1.0 / out.sigma;
    for (std::size_t i = 0; i < window.size(); ++i) {
        out.values[i] = (window[i] - out.mean) * inv;
    }
    return out;
}

SlidingWindowBuffer::SlidingWindowBuffer(std::size_t capacity) : ring_(capacity, 0.0) {
    if (capacity == 0) {
        throw std::invalid_argument("SlidingWindowBuffer: capacity must be > 0");
    }
}

void SlidingWindowBuffer::push(double x) {
    ring_[head_] = x;
    head_ = (head_ + 1) % ring_.size();
    if (fill_ < ring_.size()) ++fill_;
    ++t_;
}

std::vector<double> SlidingWindowBuffer::window() const {
    require_full("window");
    std::vector<double> out(ring_.size());
    // head_ points at the oldest sample once the buffer is full
    for (std::size_t i = 0; i < ring_.size(); ++i) {
        out[i] = ring_[(head_ + i) % ring_.size()];
    }
    return out;
}

NormalizedWindow SlidingWindowBuffer::swn_window() const {
    require_full("swn_window");
    return normalize_window(window());
}

NormalizedWindow SlidingWindowBuffer::passthrough_window() const {
    require_full("passthrough_window");
    NormalizedWindow out;
    out.values = window();
    window_moments(out.values, out.mean, out.sigma);
    return out;
}

void SlidingWindowBuffer::require_full(const char* op) const {
    if (!full()) {
        throw std::logic_error(std::string(op) + ": warm-up incomplete (window not full)");
    }
}

IncrementalWindowStats::IncrementalWindowStats(std::size_t capacity) : ring_(capacity, 0.0) {
    if (capacity == 0) {
        throw std::invalid_argument("IncrementalWindowStats: capacity must be > 0");
    }
}

void IncrementalWindowStats::push(double x) {
    if (fill_ == ring_.size()) {
        const double old = ring_[head_];
        sum_ -= old;
        sum_sq_ -= old * old;
    } else {
        ++fill_;
    }
    ring_[head_] = x;
    head_ = (head_ + 1) % ring_.size();
    sum_ += x;
    sum_sq_ += x * x;
}

double IncrementalWindowStats::mean() const { return sum_ / static_cast<double>(fill_); }

double IncrementalWindowStats::sigma() const {
    const double n = static_cast<double>(fill_);
    const double m = sum_ / n;
    const double var = sum_sq_ / n - m * m;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

double IncrementalWindowStats::newest() const {
    const std::size_t idx = (head_ + ring_.size() - 1) % ring_.size();
    return ring_[idx];
}

double IncrementalWindowStats::newest_normalized() const {
    const double s = sigma();
    if (s < kDegenerateSigma) return 0.0;
    return (newest() - mean()) / s;
}

void IncrementalWindowStats::normalized_window_into(std::span<double> out) const {
    const double m = mean();
    const double s = sigma();
    const std::size_t n = ring_.size();
    if (s < kDegenerateSigma) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    const double inv = 1.0 / s;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (ring_[(head_ + i) % n] - m) * inv;
    }
}

} // namespace emgswn
