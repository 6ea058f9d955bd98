#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace emgswn {

/// Below this the window is treated as constant and normalizes to zeros.
inline constexpr double kDegenerateSigma = 1e-12;

/// A window normalized to mean 0 / population std 1 (or passed through),
/// together with the window statistics it was derived from.
struct NormalizedWindow {
    std::vector<double> values;
    double mean = 0.0;
    double sigma = 0.0;
};

/// Population moments (divide-by-n standard deviation).
void window_moments(std::span<const double> window, double& mean, double& sigma);

/// Sliding-window z-score over a window already gathered in chronological
/// order; constant windows (sigma below kDegenerateSigma) map to all zeros.
NormalizedWindow normalize_window(std::span<const double> window);

/// Ring buffer over the last `capacity` samples of one channel. Single
/// writer; independent buffers may run in parallel across channels.
class SlidingWindowBuffer {
public:
    explicit SlidingWindowBuffer(std::size_t capacity);

    void push(double x);

    std::size_t capacity() const { return ring_.size(); }
    std::size_t fill_count() const { return fill_; }
    std::uint64_t time_index() const { return t_; }
    bool full() const { return fill_ == ring_.size(); }

    /// Window contents oldest-first. Requires a full buffer.
    std::vector<double> window() const;

    /// Whole-window z-score recomputation (the reference semantics).
    /// Throws std::logic_error until warm-up completes.
    NormalizedWindow swn_window() const;

    /// Raw window plus the same reported statistics.
    NormalizedWindow passthrough_window() const;

private:
    void require_full(const char* op) const;

    std::vector<double> ring_;
    std::size_t head_ = 0; // next write position
    std::size_t fill_ = 0;
    std::uint64_t t_ = 0;
};

/// O(1)-per-sample window statistics for the real-time path. Keeps running
/// sums over the ring; must agree with SlidingWindowBuffer::swn_window()
/// within 1e-12 (checked by tests).
class IncrementalWindowStats {
public:
    explicit IncrementalWindowStats(std::size_t capacity);

    void push(double x);
    bool full() const { return fill_ == ring_.size(); }
    std::size_t capacity() const { return ring_.size(); }

    double mean() const;
    double sigma() const;
    double newest() const;
    double newest_normalized() const;
    void normalized_window_into(std::span<double> out) const; // oldest-first

private:
    std::vector<double> ring_;
    std::size_t head_ = 0;
    std::size_t fill_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

} // namespace emgswn
