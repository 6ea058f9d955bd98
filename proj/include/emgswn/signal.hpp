#pragma once

#include <cstddef>
#include <vector>

namespace emgswn {

/// Multi-channel time series at a fixed sample rate. Channels are stored
/// contiguously (one vector per channel) and must all have the same length.
struct MultiChannelSignal {
    std::vector<std::vector<double>> channels;
    double sample_rate_hz = 0.0;

    std::size_t channel_count() const { return channels.size(); }
    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }

    /// Throws std::invalid_argument on ragged channels or nonpositive rate.
    void validate() const;

    static MultiChannelSignal zeros(std::size_t n_channels, std::size_t n_samples, double rate_hz);
};

} // namespace emgswn
