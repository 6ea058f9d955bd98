#pragma once

#include <complex>
#include <span>
#include <vector>

#include "emgswn/signal.hpp"

namespace emgswn {

enum class FilterKind { Lowpass, Highpass };

/// One second-order section, denominator normalized to a0 = 1.
struct Biquad {
    double b0 = 0, b1 = 0, b2 = 0;
    double a1 = 0, a2 = 0;
};

/// Cascaded-biquad IIR filter plus its design metadata. ceil(order/2)
/// sections; every pole strictly inside the unit circle.
struct SosFilter {
    std::vector<Biquad> sections;
    int order = 0;
    double cutoff_hz = 0.0;
    double sample_rate_hz = 0.0;
    FilterKind kind = FilterKind::Lowpass;

    std::complex<double> response_at(double freq_hz) const;
    double magnitude_at(double freq_hz) const;
    std::vector<std::complex<double>> poles() const;
};

/// Digital Butterworth design via bilinear transform with frequency
/// prewarping. Lowpass has unit DC gain; highpass unit gain at Nyquist.
/// Throws std::invalid_argument for order < 1 and std::domain_error when
/// the cutoff is outside (0, sample_rate/2).
SosFilter design_butterworth(int order, double cutoff_hz, double sample_rate_hz, FilterKind kind);

/// Stateful direct-form-II-transposed cascade for streaming use. One
/// instance per channel; movable between threads, not shareable.
class SosStream {
public:
    explicit SosStream(SosFilter filter);

    double process(double x);
    void process(std::span<const double> in, std::span<double> out);
    void reset();
    void set_state(std::span<const double> state); // 2 values per section

    const SosFilter& filter() const { return filter_; }

private:
    SosFilter filter_;
    std::vector<double> state_;
};

/// Steady-state unit-step internal state of the cascade; scaled by the
/// first sample it suppresses startup transients in the zero-phase path.
std::vector<double> sos_step_state(const std::vector<Biquad>& sections);

/// Per-channel causal filtering from zero initial state.
MultiChannelSignal filter_causal(const SosFilter& filter, const MultiChannelSignal& signal);

/// Forward-backward filtering with odd-reflection edge padding of
/// 3 * (2 * order) samples per end. Zero net phase; magnitude |H|^2.
/// Requires length > pad length.
std::vector<double> filter_zero_phase(const SosFilter& filter, std::span<const double> x);
MultiChannelSignal filter_zero_phase(const SosFilter& filter, const MultiChannelSignal& signal);

/// Keep-first-phase subsampling; output rate = input rate / factor.
/// Anti-alias filtering is the caller's job.
MultiChannelSignal decimate(const MultiChannelSignal& signal, int factor);
std::vector<double> decimate(std::span<const double> x, int factor);

} // namespace emgswn
